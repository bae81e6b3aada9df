import logging
import math
from dataclasses import dataclass, field
from typing import Sequence
import numpy as np
import numpy.typing as npt
from scipy.stats import norm
from moebiusql.utils.errors import ParameterError

logger = logging.getLogger(__name__)

DEFAULT_MC_SIGMAS = 3.0
MIN_TRIALS = 10**4
CHUNK_ENTRIES = 2**22


def hoeffding_bound(t: float, c: npt.ArrayLike) -> float:
    "2 exp(-t^2 / (2 sum c_j^2)), the two-sided Hoeffding-Azuma tail bound"
    variance_proxy = float(np.sum(np.square(c)))
    return 2 * math.exp(-t * t / (2 * variance_proxy))

def gaussian_tail(t: float, c: npt.ArrayLike) -> float:
    "P(|G| > t) for G normal with variance sum c_j^2"
    return 2 * float(norm.sf(t / math.sqrt(float(np.sum(np.square(c))))))

def monte_carlo_slack(bound: float, trials: int, mc_sigmas: float = DEFAULT_MC_SIGMAS) -> float:
    probability = min(1.0, bound)
    return mc_sigmas * math.sqrt(max(0.0, probability * (1 - probability)) / trials)


@dataclass(frozen=True)
class ConcentrationRow:
    t: float
    empirical: float
    "fraction of trials with |S| > t"
    bound: float
    gaussian: float
    "normal approximation of the tail"
    slack: float

    @property
    def passed(self) -> bool:
        return self.empirical <= self.bound + self.slack

@dataclass
class ConcentrationReport:
    m: int
    trials: int
    martingale: bool
    rows: list[ConcentrationRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)


def _predictable_scale(partial_sums: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    "a bounded function of the past, |h| <= 1"
    return np.where(partial_sums >= 0, 1.0, 0.5)

def hoeffding_azuma_check(
    c: npt.ArrayLike,
    t_list: Sequence[float],
    trials: int,
    seed: int = 0,
    martingale: bool = False,
    mc_sigmas: float = DEFAULT_MC_SIGMAS,
) -> ConcentrationReport:
    """Monte-Carlo tails of S = sum_j x_j against 2 exp(-t^2 / (2 sum c_j^2)).

    x_j = c_j eps_j with fair signs eps_j; with `martingale` the increments are
    c_j eps_j h(S_{j-1}) for a bounded predictable h, which keeps them a
    martingale difference sequence with |x_j| <= c_j.
    """
    c = np.asarray(c, dtype=np.float64)
    if c.ndim != 1 or len(c) == 0 or np.any(c <= 0):
        raise ParameterError("c must be a nonempty array of positive bounds")
    if trials < 1:
        raise ParameterError(f"trials must be positive, got {trials}")
    if trials < MIN_TRIALS:
        logger.warning("only %d trials, Monte-Carlo slack will be wide", trials)
    t_array = np.asarray(t_list, dtype=np.float64)

    m = len(c)
    rng = np.random.Generator(np.random.Philox(seed))
    exceedances = np.zeros(len(t_array), dtype=np.int64)
    chunk = max(1, CHUNK_ENTRIES // m)
    done = 0
    while done < trials:
        size = min(chunk, trials - done)
        signs = rng.integers(0, 2, size=(size, m), dtype=np.int8) * 2 - 1
        if martingale:
            sums = np.zeros(size)
            for j in range(m):
                sums += c[j] * signs[:, j] * _predictable_scale(sums)
        else:
            sums = signs.astype(np.float64) @ c
        exceedances += np.count_nonzero(np.abs(sums)[:, None] > t_array[None, :], axis=0)
        done += size

    report = ConcentrationReport(m, trials, martingale)
    for t, count in zip(t_array.tolist(), exceedances.tolist()):
        bound = hoeffding_bound(t, c)
        report.rows.append(ConcentrationRow(
            t, count / trials, bound, gaussian_tail(t, c), monte_carlo_slack(bound, trials, mc_sigmas)
        ))
    logger.info("hoeffding-azuma m=%d trials=%d passed=%s", m, trials, report.passed)
    return report
