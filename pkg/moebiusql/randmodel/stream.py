from dataclasses import dataclass
import numpy as np
import numpy.typing as npt
from moebiusql.arith.sieve import SieveTable
from moebiusql.utils.counter import MU_RAND_STREAM, counter_signs
from moebiusql.utils.errors import RangeError


@dataclass(frozen=True)
class RandomMoebiusStream:
    """mu_rand(n) = eps_n mu^2(n) with fair independent signs eps_n.

    eps_n is drawn in counter mode from (seed, n), so any range is addressable
    directly and does not depend on what was sampled before.
    """

    seed: int
    "64-bit seed of the sign stream"

    table: SieveTable
    "supplies the squarefree support"

    def _check_range(self, n_lo: int, n_hi: int):
        if n_lo < 1 or n_hi > self.table.n_max + 1 or n_lo > n_hi:
            raise RangeError(f"range [{n_lo}, {n_hi}) outside 1..{self.table.n_max}")

    def epsilon(self, n_lo: int, n_hi: int) -> npt.NDArray[np.int8]:
        "the raw signs eps_n for n_lo <= n < n_hi"
        if n_lo < 1 or n_lo > n_hi:
            raise RangeError(f"range [{n_lo}, {n_hi}) must start at 1 or later")
        return counter_signs(self.seed, n_lo, n_hi, MU_RAND_STREAM)

    def sample(self, n_lo: int, n_hi: int) -> npt.NDArray[np.int8]:
        "mu_rand(n) for n_lo <= n < n_hi"
        self._check_range(n_lo, n_hi)
        return self.epsilon(n_lo, n_hi) * self.table.mu_squared_slice(n_lo, n_hi)

    def __getitem__(self, n: int) -> int:
        return int(self.sample(n, n + 1)[0])


def sample(seed: int, table: SieveTable, n_lo: int, n_hi: int) -> npt.NDArray[np.int8]:
    return RandomMoebiusStream(seed, table).sample(n_lo, n_hi)
