import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional
import numpy as np
import numpy.typing as npt
from moebiusql.utils.errors import ParameterError, RangeError, SieveAllocationError
from moebiusql.utils.primes import primes_upto

logger = logging.getLogger(__name__)

DEFAULT_SEGMENT_SIZE = 2**20

# code 3 is reserved and decodes to 0
MU_DECODE = np.array([0, 1, -1, 0], dtype=np.int8)
_SHIFTS = np.array([0, 2, 4, 6], dtype=np.uint8)


def pack_mu(mu: npt.NDArray[np.int8]) -> npt.NDArray[np.uint8]:
    "packs mu values into 2-bit codes, four entries per byte, lowest bits first"
    codes = np.where(mu < 0, 2, mu).astype(np.uint8)
    pad = (-len(codes)) % 4
    if pad:
        codes = np.concatenate([codes, np.zeros(pad, dtype=np.uint8)])
    quads = codes.reshape(-1, 4)
    return (quads[:, 0] | (quads[:, 1] << 2) | (quads[:, 2] << 4) | (quads[:, 3] << 6)).astype(np.uint8)

def unpack_mu(packed: npt.NDArray[np.uint8], start: int, stop: int) -> npt.NDArray[np.int8]:
    "decodes the 0-based entry positions start..stop-1"
    first_byte, last_byte = start // 4, (stop + 3) // 4
    chunk = packed[first_byte:last_byte]
    codes = ((chunk[:, None] >> _SHIFTS[None, :]) & 3).reshape(-1)
    offset = start - 4 * first_byte
    return MU_DECODE[codes[offset:offset + (stop - start)]]


@dataclass(frozen=True, eq=False)
class SieveTable:
    n_max: int
    "largest integer covered by the table"

    packed_mu: npt.NDArray[np.uint8]
    "mu(1..n_max) as 2-bit codes (0 -> 0, 1 -> +1, 2 -> -1)"

    omega: Optional[npt.NDArray[np.uint8]] = None
    "number of distinct prime factors, omega(n) stored at position n-1"

    def __post_init__(self):
        assert len(self.packed_mu) == (self.n_max + 3) // 4, "packed mu length does not match n_max"
        assert self.omega is None or len(self.omega) == self.n_max, "omega length does not match n_max"
        self.packed_mu.setflags(write=False)
        if self.omega is not None:
            self.omega.setflags(write=False)

    def _check_range(self, lo: int, hi: int):
        if lo < 1:
            raise RangeError(f"index origin is 1, got {lo}")
        if hi > self.n_max + 1 or lo > hi:
            raise RangeError(f"range [{lo}, {hi}) outside table 1..{self.n_max}")

    def mu_slice(self, lo: int = 1, hi: Optional[int] = None) -> npt.NDArray[np.int8]:
        "mu(n) for lo <= n < hi"
        hi = self.n_max + 1 if hi is None else hi
        self._check_range(lo, hi)
        return unpack_mu(self.packed_mu, lo - 1, hi - 1)

    def mu_squared_slice(self, lo: int = 1, hi: Optional[int] = None) -> npt.NDArray[np.int8]:
        "indicator of the squarefree set for lo <= n < hi"
        return np.abs(self.mu_slice(lo, hi))

    def omega_slice(self, lo: int = 1, hi: Optional[int] = None) -> npt.NDArray[np.uint8]:
        if self.omega is None:
            raise ParameterError("table was sieved without omega, use sieve(..., with_omega=True)")
        hi = self.n_max + 1 if hi is None else hi
        self._check_range(lo, hi)
        return self.omega[lo - 1:hi - 1]

    @property
    def mu(self) -> npt.NDArray[np.int8]:
        return self.mu_slice()

    def __getitem__(self, n: int) -> int:
        return int(self.mu_slice(n, n + 1)[0])

    def __len__(self) -> int:
        return self.n_max

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SieveTable):
            return False
        same_omega = (self.omega is None) == (other.omega is None) and (
            self.omega is None or np.array_equal(self.omega, other.omega)  # type: ignore
        )
        return self.n_max == other.n_max and np.array_equal(self.packed_mu, other.packed_mu) and same_omega

    def __hash__(self) -> int:
        return hash((self.n_max, self.packed_mu[:64].tobytes()))


def _sieve_segment(lo: int, hi: int, primes: npt.NDArray[np.int64]):
    "mu and omega for lo <= n < hi using the base primes up to sqrt(hi - 1)"
    top = hi - 1
    mu = np.ones(hi - lo, dtype=np.int8)
    omega = np.zeros(hi - lo, dtype=np.uint8)
    rest = np.arange(lo, hi, dtype=np.int64)
    for p in primes.tolist():
        if p * p > top:
            break
        start = (-lo) % p
        mu[start::p] *= -1
        omega[start::p] += 1
        power = p
        while power <= top:
            rest[(-lo) % power::power] //= p
            power *= p
        square = p * p
        mu[(-lo) % square::square] = 0

    # what remains above 1 is a single prime larger than sqrt(hi - 1)
    large = rest > 1
    mu[large] *= -1
    omega[large] += 1
    return mu, omega

def _allocate(nbytes: int, what: str) -> npt.NDArray[np.uint8]:
    try:
        return np.zeros(nbytes, dtype=np.uint8)
    except MemoryError as error:
        raise SieveAllocationError(nbytes, what) from error

def sieve(
    n_max: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
    with_omega: bool = False,
) -> SieveTable:
    """Segmented sieve for mu(n) and omega(n), 1 <= n <= n_max.

    Each segment is sieved independently by the base primes up to sqrt(n_max)
    and written into its own slice of the packed output, so the table is
    identical for every segment size and worker count.
    """
    if n_max < 1:
        raise ParameterError(f"n_max must be positive, got {n_max}")
    if segment_size < 4 or segment_size % 4:
        raise ParameterError(f"segment size must be a positive multiple of 4, got {segment_size}")

    begin = time.perf_counter()
    packed = _allocate((n_max + 3) // 4, "packed mu table")
    omega = _allocate(n_max, "omega table") if with_omega else None
    primes = primes_upto(math.isqrt(n_max))

    def run_segment(lo: int):
        hi = min(lo + segment_size, n_max + 1)
        mu_segment, omega_segment = _sieve_segment(lo, hi, primes)
        byte_offset = (lo - 1) // 4
        packed_segment = pack_mu(mu_segment)
        packed[byte_offset:byte_offset + len(packed_segment)] = packed_segment
        if omega is not None:
            omega[lo - 1:hi - 1] = omega_segment
        logger.debug("sieved segment [%d, %d)", lo, hi)

    segment_starts = range(1, n_max + 1, segment_size)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            list(executor.map(run_segment, segment_starts))
    else:
        for lo in segment_starts:
            run_segment(lo)

    logger.info(
        "sieved mu up to %d in %d segments (%.2fs)",
        n_max, len(segment_starts), time.perf_counter() - begin,
    )
    return SieveTable(n_max, packed, omega)


def trial_division_omega_mu(n: int) -> tuple[int, int]:
    "(omega(n), mu(n)) by trial division, the brute-force oracle"
    if n < 1:
        raise RangeError(f"index origin is 1, got {n}")
    omega, squarefree, d = 0, True, 2
    while d * d <= n:
        if n % d == 0:
            omega += 1
            n //= d
            if n % d == 0:
                squarefree = False
                while n % d == 0:
                    n //= d
        d += 1
    if n > 1:
        omega += 1
    return omega, ((-1) ** omega if squarefree else 0)

def trial_division_mu(n: int) -> int:
    return trial_division_omega_mu(n)[1]

def trial_division_omega(n: int) -> int:
    return trial_division_omega_mu(n)[0]
