import logging
import math
import time
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Union
import numpy as np
import scipy.signal
from moebiusql.arith.sieve import SieveTable
from moebiusql.dynsys.blocks import block_spanning_count
from moebiusql.dynsys.generators import SequenceGenerator
from moebiusql.randmodel.concentration import DEFAULT_MC_SIGMAS, monte_carlo_slack
from moebiusql.randmodel.stream import RandomMoebiusStream
from moebiusql.utils.errors import ParameterError, PositiveEntropyError, RangeError
from moebiusql.utils.numeric import fsum_complex, least_squares_slope
from moebiusql.utils.types import SequenceLike, as_complex_array

logger = logging.getLogger(__name__)

PREFIX_BLOCKS = 8


@dataclass(frozen=True)
class BlockAverage:
    n: int
    "first index of the random Moebius segment"
    m: int
    "block length"
    value: complex
    "(1/m) sum_{j<m} g_j mu_rand(n + j)"

def block_average(g: SequenceLike, stream: RandomMoebiusStream, n: int, m: int) -> BlockAverage:
    g = as_complex_array(g)
    if m < 1 or len(g) < m:
        raise RangeError(f"need 1 <= m <= len(g), got m={m}, len(g)={len(g)}")
    weights = stream.sample(n, n + m)
    value = fsum_complex(g[:m] * weights) / m
    assert abs(value) <= np.abs(g[:m]).max() + 1e-12, "block average exceeds sup|g|"
    return BlockAverage(n, m, value)


class BlockDecomposition(NamedTuple):
    direct: complex
    "(1/N) sum_{n=1}^{N} X_n with X_n = g_n mu_rand(n)"
    blocked: complex
    "(1/N) sum_{n=1}^{N} (1/m) sum_{j<m} X_{n+j}"
    remainder: complex
    bound: float
    "(m/N) sup|g|"

def block_decomposition(g: SequenceLike, stream: RandomMoebiusStream, N: int, m: int) -> BlockDecomposition:
    """Splits the orthogonality average into block averages plus a remainder.

    g holds g_1, g_2, ... at positions 0, 1, ... and must cover N + m - 1 terms.
    """
    g = as_complex_array(g)
    if N < 1 or m < 1:
        raise ParameterError(f"need N, m >= 1, got N={N}, m={m}")
    top = N + m - 1
    if len(g) < top:
        raise RangeError(f"g must hold N + m - 1 = {top} terms, got {len(g)}")
    terms = g[:top] * stream.sample(1, top + 1)
    prefix = np.concatenate([[0], np.cumsum(terms)])
    direct = complex(prefix[N]) / N
    blocked = complex(np.sum(prefix[N:N + m] - prefix[:m])) / (N * m)
    remainder = direct - blocked
    bound = m / N * float(np.abs(g[:top]).max())
    assert abs(remainder) <= bound + 1e-12, "block remainder exceeds (m/N) sup|g|"
    return BlockDecomposition(direct, blocked, remainder, bound)


@dataclass
class UnionBoundReport:
    system: str
    m: int
    delta: float
    eta: float
    "delta^2 / ||f||^2, the entropy budget of the spanning set"
    r: int
    "observed distinct m-blocks, the spanning-set proxy"
    bound: float
    "r 2 exp(-2 m delta^2 / ||f||^2)"
    entropy_bound: float
    "2 exp(-m (2 delta^2 / ||f||^2 - eta)), valid once r < e^{eta m}"
    sup_values: list[float] = field(default_factory=list)
    "sup over blocks of |Y_n^m| for each seed"
    slack: float = 0.0

    @property
    def trials(self) -> int:
        return len(self.sup_values)

    @property
    def exceedances(self) -> int:
        return sum(value > 3 * self.delta for value in self.sup_values)

    @property
    def frequency(self) -> float:
        return self.exceedances / self.trials if self.trials else 0.0

    @property
    def passed(self) -> bool:
        return self.frequency <= self.bound + self.slack

def union_bound_experiment(
    system: SequenceGenerator,
    table: SieveTable,
    n: int,
    m: int,
    delta: float,
    trials: int,
    seed_offset: int = 0,
    prefix_length: Optional[int] = None,
    mc_sigmas: float = DEFAULT_MC_SIGMAS,
) -> UnionBoundReport:
    """sup over orbit blocks of |Y_n^m| across random seeds.

    The observed m-blocks of a prefix of the orbit stand in for the spanning
    set; each seed draws mu_rand(n..n+m-1) once and every block of the prefix is
    averaged against it by FFT cross-correlation.
    """
    if not system.is_zero_entropy:
        raise PositiveEntropyError(f"{system.name} has positive entropy, r(m) grows like e^(hm) and the bound is vacuous")
    if delta <= 0 or trials < 1:
        raise ParameterError(f"need delta > 0 and trials >= 1, got delta={delta}, trials={trials}")
    if n < 1 or n + m - 1 > table.n_max:
        raise RangeError(f"segment [{n}, {n + m}) outside 1..{table.n_max}")

    begin = time.perf_counter()
    sup_norm = system.sup_norm
    eta = delta**2 / sup_norm**2
    prefix_length = prefix_length or PREFIX_BLOCKS * m
    r = block_spanning_count(system.symbols(prefix_length), m)
    orbit = system.generate(prefix_length)
    exponent = 2 * m * delta**2 / sup_norm**2
    report = UnionBoundReport(
        system.name, m, delta, eta, r,
        bound=r * 2 * math.exp(-exponent),
        entropy_bound=2 * math.exp(-(exponent - eta * m)),
    )

    for seed in range(seed_offset, seed_offset + trials):
        weights = RandomMoebiusStream(seed, table).sample(n, n + m).astype(np.float64)
        averages = scipy.signal.fftconvolve(orbit, weights[::-1], mode="valid") / m
        report.sup_values.append(float(np.abs(averages).max()))
    report.slack = monte_carlo_slack(report.bound, trials, mc_sigmas)
    logger.info(
        "union bound %s m=%d r=%d exceedances=%d/%d (%.2fs)",
        system.name, m, r, report.exceedances, trials, time.perf_counter() - begin,
    )
    return report


@dataclass
class DecayReport:
    system: str
    n_grid: list[int]
    seeds: list[int] = field(default_factory=list)
    "seeds kept in the fit"
    s_n: list[list[float]] = field(default_factory=list)
    "S_N per kept seed, aligned with n_grid"
    slopes: list[float] = field(default_factory=list)
    excluded: int = 0
    "seeds dropped because some S_N vanished exactly"

    @property
    def mean_slope(self) -> Optional[float]:
        return math.fsum(self.slopes) / len(self.slopes) if self.slopes else None

    def rows(self) -> list[tuple[int, int, float]]:
        return [(seed, n, s) for seed, values in zip(self.seeds, self.s_n) for n, s in zip(self.n_grid, values)]

def orthogonality_decay(
    system: Union[SequenceGenerator, SequenceLike],
    table: SieveTable,
    seeds: Sequence[int],
    n_grid: Sequence[int],
) -> DecayReport:
    "least-squares slope of log S_N against log N with S_N = |(1/N) sum_{n<=N} g_n mu_rand(n)|, averaged over seeds"
    n_grid = list(n_grid)
    if len(n_grid) < 4 or any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise ParameterError("n_grid needs at least four increasing sizes")
    if n_grid[0] < 1 or n_grid[-1] > table.n_max:
        raise RangeError(f"n_grid must lie in 1..{table.n_max}")

    top = n_grid[-1]
    if isinstance(system, SequenceGenerator):
        name, g = system.name, system.generate(top)
    else:
        name, g = "sequence", as_complex_array(system)
        if len(g) < top:
            raise RangeError(f"sequence of length {len(g)} is shorter than N={top}")
    g = g[:top]
    bounds = [0, *n_grid]
    log_n = np.log(n_grid)

    report = DecayReport(name, n_grid)
    for seed in seeds:
        products = g * RandomMoebiusStream(seed, table).sample(1, top + 1)
        # partial sums at the grid points from exactly summed chunks between them
        chunks = [fsum_complex(products[lo:hi]) for lo, hi in zip(bounds, bounds[1:])]
        partial = np.array([fsum_complex(np.array(chunks[:i + 1])) for i in range(len(chunks))])
        s_n = np.abs(partial) / np.asarray(n_grid)
        if np.any(s_n == 0):
            report.excluded += 1
            continue
        report.seeds.append(seed)
        report.s_n.append(s_n.tolist())
        report.slopes.append(least_squares_slope(log_n, np.log(s_n)))
    if report.excluded:
        logger.warning("%d of %d seeds excluded from the decay fit", report.excluded, len(seeds))
    return report


class BorelCantelli(NamedTuple):
    q_max: int
    partial_sum: float
    "sum_{q <= q_max} 1/q^2"
    limit: float
    "pi^2 / 6"
    tail_bound: float
    "1/q_max bounds the remaining tail"

def borel_cantelli_summability(q_max: int) -> BorelCantelli:
    if q_max < 1:
        raise ParameterError(f"q_max must be positive, got {q_max}")
    q = np.arange(1, q_max + 1, dtype=np.float64)
    return BorelCantelli(q_max, math.fsum((1 / q**2).tolist()), math.pi**2 / 6, 1 / q_max)
