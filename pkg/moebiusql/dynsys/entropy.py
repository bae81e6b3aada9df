import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence
import numpy as np
from moebiusql.dynsys.blocks import block_spanning_count
from moebiusql.dynsys.generators import SequenceGenerator
from moebiusql.utils.errors import ParameterError
from moebiusql.utils.numeric import least_squares_slope

logger = logging.getLogger(__name__)


def bins_for_epsilon(epsilon: float) -> int:
    "power-of-two number of phase bins whose arcs are no wider than epsilon turns"
    if not 0 < epsilon <= 1:
        raise ParameterError(f"epsilon must lie in (0, 1], got {epsilon}")
    return 1 << max(0, math.ceil(math.log2(1 / epsilon)))


@dataclass(frozen=True)
class EntropyTable:
    m_list: list[int]
    "block lengths"

    r: list[int]
    "distinct m-blocks observed in the prefix, one per entry of m_list"

    slope_estimate: float
    "least-squares slope of log r(m) against m over the larger half of m_list"

    alphabet_size: int
    "number of symbols of the coding"

    @property
    def log_r_over_m(self) -> list[float]:
        return [math.log(r) / m for m, r in zip(self.m_list, self.r)]

    def first_below(self, eta: float) -> Optional[int]:
        "smallest m from which on r(m) < e^{m eta} for every later entry"
        below = [r < math.exp(m * eta) for m, r in zip(self.m_list, self.r)]
        for index in range(len(below)):
            if all(below[index:]):
                return self.m_list[index]
        return None


def entropy_estimate(
    gen: SequenceGenerator,
    N: int,
    m_list: Sequence[int],
    epsilon: Optional[float] = None,
) -> EntropyTable:
    """Spanning-set growth of a symbolic coding of gen.

    Below the symbol separation every (m, epsilon)-spanning set is the set of
    distinct m-blocks, so r(m) is counted exactly. All block lengths use the
    same window start positions.
    """
    m_list = list(m_list)
    if not m_list or any(b <= a for a, b in zip(m_list, m_list[1:])):
        raise ParameterError("m_list must be nonempty and strictly increasing")
    if 4 * m_list[-1] > N:
        raise ParameterError(f"largest block length {m_list[-1]} exceeds N/4 = {N / 4}")

    phase_bins = None if epsilon is None else bins_for_epsilon(epsilon)
    symbols = gen.symbols(N, phase_bins)
    alphabet_size = gen.alphabet_size(phase_bins)
    n_windows = N - m_list[-1] + 1
    r = [block_spanning_count(symbols, m, n_windows) for m in m_list]

    for (m_a, r_a), (m_b, r_b) in zip(zip(m_list, r), zip(m_list[1:], r[1:])):
        assert r_a <= r_b, "block counts must not decrease with m"
        assert math.log(r_b) <= math.log(r_a) + (m_b - m_a) * math.log(alphabet_size) + 1e-9, "block counts grew faster than the alphabet allows"

    tail = max(2, (len(m_list) + 1) // 2)
    if len(m_list) >= 2:
        slope = least_squares_slope(m_list[-tail:], np.log(r[-tail:]))
    else:
        slope = math.log(r[0]) / m_list[0]
    logger.info("entropy of %s: r=%s slope=%.4g", gen.name, r, slope)
    return EntropyTable(m_list, r, slope, alphabet_size)
