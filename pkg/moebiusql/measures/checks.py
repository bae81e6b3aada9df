import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union
import numpy as np
from moebiusql.measures.affinity import AFFINITY_TOLERANCE, affinity
from moebiusql.measures.circle import CircleMeasure
from moebiusql.spectral.periodogram import periodogram
from moebiusql.utils.errors import ParameterError, RangeError, TrivialSequenceError
from moebiusql.utils.numeric import next_power_of_two
from moebiusql.utils.types import FloatArray, SequenceLike, as_complex_array

logger = logging.getLogger(__name__)

DEFAULT_SLACK = 0.05


@dataclass(frozen=True)
class BellowLosertRow:
    n: int
    cross_sum: float
    "|(1/n) sum g_j conj(h_j)|"
    affinity: float
    "G of the normalised periodogram measures"
    raw_affinity: float
    "(1/2 pi) int sqrt(rho_g rho_h) without normalising"

@dataclass
class BellowLosertReport:
    rows: list[BellowLosertRow] = field(default_factory=list)
    slack: float = DEFAULT_SLACK
    trivial: bool = False
    "one of the sequences has zero mean square at some n"

    @property
    def holds(self) -> Optional[bool]:
        "cross-sum <= G + slack at the largest n; None for trivial sequences"
        if self.trivial or not self.rows:
            return None
        last = self.rows[-1]
        return last.cross_sum <= last.affinity + self.slack


def _check_lengths(n_list: Sequence[int], *sequences: np.ndarray):
    if not n_list or min(n_list) < 1:
        raise ParameterError("n_list must hold positive lengths")
    for sequence in sequences:
        if len(sequence) < max(n_list):
            raise RangeError(f"sequence of length {len(sequence)} is shorter than n={max(n_list)}")

def bellow_losert_check(
    g: SequenceLike,
    h: SequenceLike,
    n_list: Sequence[int],
    slack: float = DEFAULT_SLACK,
    workers: Optional[int] = None,
    strict: bool = False,
) -> BellowLosertReport:
    """Compares |(1/n) sum g conj(h)| against the affinity of the two periodograms.

    On a grid of at least 2n points the cross-sum is bounded by the raw
    affinity exactly, and the raw affinity by G when |g|, |h| <= 1. A prefix
    with zero mean square is skipped and flagged, or raises
    TrivialSequenceError when strict.
    """
    g, h = as_complex_array(g), as_complex_array(h)
    n_list = sorted(n_list)
    _check_lengths(n_list, g, h)

    report = BellowLosertReport(slack=slack)
    for n in n_list:
        grid_size = next_power_of_two(2 * n)
        pgram_g = periodogram(g[:n], grid_size, workers)
        pgram_h = periodogram(h[:n], grid_size, workers)
        if not (pgram_g.mass > 0 and pgram_h.mass > 0):
            if strict:
                raise TrivialSequenceError(f"sequence prefix of length {n} has zero mean square")
            logger.warning("trivial sequence at n=%d, the affinity bound does not apply", n)
            report.trivial = True
            continue
        cross_sum = abs(np.vdot(h[:n], g[:n])) / n
        raw = float(np.mean(np.sqrt(pgram_g.density * pgram_h.density)))
        normalized = raw / np.sqrt(pgram_g.mass * pgram_h.mass)
        assert normalized <= 1 + AFFINITY_TOLERANCE, f"affinity {normalized} above 1"
        report.rows.append(BellowLosertRow(n, float(cross_sum), float(normalized), raw))
        logger.debug("bellow-losert n=%d cross=%.3g G=%.3g", n, cross_sum, normalized)
    return report


@dataclass(frozen=True)
class L1BoundReport:
    n: int
    l1: float
    "(1/2 pi) int |(1/sqrt n) sum g_j e^{ijx}| dx"
    bound: Optional[float] = None
    "(1/2 pi) int sqrt(reference density) dx + slack"

    @property
    def holds(self) -> Optional[bool]:
        return None if self.bound is None else self.l1 <= self.bound

def l1_sqrt_bound_check(
    g: SequenceLike,
    n: int,
    reference_ac_density: Union[FloatArray, float, None] = None,
    slack: float = DEFAULT_SLACK,
    grid_size: Optional[int] = None,
    workers: Optional[int] = None,
) -> L1BoundReport:
    g = as_complex_array(g)
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    if len(g) < n:
        raise RangeError(f"sequence of length {len(g)} is shorter than n={n}")
    grid_size = next_power_of_two(8 * n) if grid_size is None else grid_size
    density = periodogram(g[:n], grid_size, workers).density
    l1 = float(np.mean(np.sqrt(density)))
    if reference_ac_density is None:
        return L1BoundReport(n, l1)
    reference = np.atleast_1d(np.asarray(reference_ac_density, dtype=np.float64))
    if np.any(reference < 0):
        raise ParameterError("reference density must be nonnegative")
    return L1BoundReport(n, l1, float(np.mean(np.sqrt(reference))) + slack)


@dataclass
class SemicontinuityReport:
    n_list: list[int]
    affinities: list[float]
    "G(periodogram at n, reference) for each n"
    limit_affinity: float
    slack: float = DEFAULT_SLACK

    @property
    def limsup(self) -> float:
        "largest affinity over the later half of n_list"
        tail = self.affinities[len(self.affinities) // 2:]
        return max(tail)

    @property
    def holds(self) -> bool:
        return self.limsup <= self.limit_affinity + self.slack

def semicontinuity_check(
    g: SequenceLike,
    reference: CircleMeasure,
    n_list: Sequence[int],
    limit_affinity: float,
    slack: float = DEFAULT_SLACK,
    workers: Optional[int] = None,
) -> SemicontinuityReport:
    """Affinity between the periodogram measures of g and a fixed reference.

    Weak convergence of the normalised periodograms makes the affinity upper
    semicontinuous: the later values may not exceed the affinity of the limit
    measure by more than the slack.
    """
    g = as_complex_array(g)
    n_list = sorted(n_list)
    _check_lengths(n_list, g)
    affinities = []
    for n in n_list:
        pgram = periodogram(g[:n], next_power_of_two(2 * n), workers)
        affinities.append(affinity(CircleMeasure.from_periodogram(pgram), reference))
    return SemicontinuityReport(list(n_list), affinities, limit_affinity, slack)
