import itertools
import logging
import math
import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence
import numpy as np
from moebiusql.arith.sieve import trial_division_mu
from moebiusql.arith.sums import squarefree_density
from moebiusql.artifacts.artifact import Artifact
from moebiusql.config import SuiteType, Tolerances
from moebiusql.dynsys.entropy import entropy_estimate
from moebiusql.dynsys.generators import SequenceGenerator
from moebiusql.dynsys.orthogonality import orthogonality_sum, weight_sequence
from moebiusql.measures.affinity import AFFINITY_TOLERANCE, affinity, hellinger, raw_affinity
from moebiusql.measures.checks import bellow_losert_check
from moebiusql.measures.circle import CircleMeasure
from moebiusql.randmodel.concentration import hoeffding_azuma_check
from moebiusql.randmodel.experiments import orthogonality_decay
from moebiusql.spectral.correlation import autocorrelation, direct_autocorrelation, elliott_correlations
from moebiusql.spectral.mirsky import DEFAULT_PRIME_CUTOFF, mirsky_coefficient, mu_squared_spectrum
from moebiusql.transaction import Transaction, TransactionContext
from moebiusql.transactions.measures import resolve_sequence
from moebiusql.utils.primes import primes_upto

logger = logging.getLogger(__name__)

SQUAREFREE_DENSITY = 6 / math.pi**2
MIRSKY_LAGS = 16
PAIR_SEQUENCES = (
    "rotation:golden",
    "rotation:sqrt2",
    "quadratic_weyl:golden",
    "thue_morse",
    "q_multiplicative:3:0,1/3,2/3",
    "random_shift:1",
    "mu",
)


@dataclass(frozen=True)
class SuiteSizes:
    n: int
    "N of the Mirsky, density and Elliott criteria"
    prime_cutoffs: tuple[int, ...]
    d_max: int
    affinity_grid: int
    random_pairs: int
    pair_n: int
    pair_count: int
    ha_m: int
    ha_trials: int
    zero_entropy_n: int
    zero_entropy_m: tuple[int, ...]
    full_shift_n: int
    full_shift_m: tuple[int, ...]
    decay_seeds: int
    decay_grid: tuple[int, ...]
    orthogonality_n: tuple[int, ...]
    elliott_start: int
    elliott_h: int
    oracle_sequences: int
    oracle_length: int
    trial_division_max: int

    @property
    def n_max(self) -> int:
        return max(
            self.n + max(MIRSKY_LAGS, self.elliott_h),
            self.pair_n,
            max(self.decay_grid),
            max(self.orthogonality_n),
            self.trial_division_max,
        )


SUITES: dict[SuiteType, SuiteSizes] = {
    "acceptance": SuiteSizes(
        n=10**7, prime_cutoffs=(10**3, 10**6), d_max=1000, affinity_grid=2**14, random_pairs=1000,
        pair_n=10**6, pair_count=20, ha_m=1000, ha_trials=10**5,
        zero_entropy_n=2**22, zero_entropy_m=(32, 64, 128, 256),
        full_shift_n=2**22, full_shift_m=(4, 6, 8, 10, 12),
        decay_seeds=50, decay_grid=tuple(2**e for e in range(10, 23)),
        orthogonality_n=(10**5, 10**6, 10**7), elliott_start=10**4, elliott_h=10,
        oracle_sequences=100, oracle_length=10**4, trial_division_max=10**5,
    ),
    "quick": SuiteSizes(
        n=10**6, prime_cutoffs=(10**3, 10**6), d_max=1000, affinity_grid=2**14, random_pairs=100,
        pair_n=10**5, pair_count=20, ha_m=1000, ha_trials=2 * 10**4,
        zero_entropy_n=2**14, zero_entropy_m=(32, 64, 128, 256),
        full_shift_n=2**18, full_shift_m=(4, 6, 8, 10),
        decay_seeds=20, decay_grid=tuple(2**e for e in range(10, 19)),
        orthogonality_n=(10**4, 10**5, 10**6), elliott_start=10**4, elliott_h=10,
        oracle_sequences=20, oracle_length=2000, trial_division_max=10**4,
    ),
}


def _decreasing(values: Sequence[float]) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def mirsky_reproduction(ctx: TransactionContext, sizes: SuiteSizes, tol: Tolerances) -> tuple[bool, str]:
    table = elliott_correlations(ctx.table, sizes.n, MIRSKY_LAGS, squared=True)
    gaps = [abs(value.real - mirsky_coefficient(k, DEFAULT_PRIME_CUTOFF)) for k, value in enumerate(table.f_hat.tolist())]
    return max(gaps) <= tol.mirsky, f"max gap {max(gaps):.3e} over k<={MIRSKY_LAGS} at N={sizes.n}"

def squarefree_density_check(ctx: TransactionContext, sizes: SuiteSizes, tol: Tolerances) -> tuple[bool, str]:
    gap = abs(squarefree_density(ctx.table, sizes.n) - SQUAREFREE_DENSITY)
    return gap <= tol.density, f"|Q(N)/N - 6/pi^2| = {gap:.3e} at N={sizes.n}"

def euler_identity(ctx: TransactionContext, sizes: SuiteSizes, tol: Tolerances) -> tuple[bool, str]:
    gaps = []
    for cutoff in sizes.prime_cutoffs:
        primes = primes_upto(cutoff).astype(np.float64)
        direct = math.exp(math.fsum(np.log1p(-1 / primes**2).tolist()))
        gaps.append(abs(mirsky_coefficient(0, cutoff) - direct))
    return max(gaps) <= tol.identity, "gaps " + ", ".join(f"P={p}: {g:.1e}" for p, g in zip(sizes.prime_cutoffs, gaps))

def spectrum_consistency(ctx: TransactionContext, sizes: SuiteSizes, tol: Tolerances) -> tuple[bool, str]:
    measure = mu_squared_spectrum(sizes.d_max, DEFAULT_PRIME_CUTOFF)
    gap = max(abs(measure.fourier_coefficient(k) - mirsky_coefficient(k, DEFAULT_PRIME_CUTOFF)) for k in range(MIRSKY_LAGS + 1))
    mass_gap = abs(measure.total_mass - SQUAREFREE_DENSITY)
    passed = gap <= tol.spectrum and mass_gap <= tol.spectrum
    return passed, f"coefficient gap {gap:.3e}, mass gap {mass_gap:.3e} at d_max={sizes.d_max}"

def elliott_decay(ctx: TransactionContext, sizes: SuiteSizes, tol: Tolerances) -> tuple[bool, str]:
    def largest(N: int) -> float:
        return float(np.abs(elliott_correlations(ctx.table, N, sizes.elliott_h).f_hat[1:]).max())
    start, end = largest(sizes.elliott_start), largest(sizes.n)
    return end < tol.elliott and end < start, f"max |c(h)| {start:.3e} at N={sizes.elliott_start}, {end:.3e} at N={sizes.n}"

def _random_measure(rng: np.random.Generator) -> CircleMeasure:
    atoms = [
        ((int(rng.integers(0, q)), q), float(rng.random()))
        for q in rng.integers(1, 13, size=int(rng.integers(0, 5))).tolist()
    ]
    density = rng.random(2 ** int(rng.integers(4, 11))) if rng.random() < 0.5 or not atoms else None
    return CircleMeasure.from_atoms(atoms, density)

def affinity_exactness(ctx: TransactionContext, sizes: SuiteSizes, tol: Tolerances) -> tuple[bool, str]:
    lebesgue = CircleMeasure.lebesgue(sizes.affinity_grid)
    mixed = CircleMeasure.from_atoms([(0, 0.5)], np.full(sizes.affinity_grid, 0.5))
    cases = [
        (affinity(mixed, mixed), 1.0),
        (affinity(CircleMeasure.dirac(0), CircleMeasure.dirac("1/2")), 0.0),
        (affinity(lebesgue, mixed), 1 / math.sqrt(2)),
        (hellinger(CircleMeasure.dirac(0), CircleMeasure.dirac("1/2")), math.sqrt(2)),
        (hellinger(lebesgue, mixed), math.sqrt(2 - math.sqrt(2))),
    ]
    worst = max(abs(value - expected) for value, expected in cases)

    rng = np.random.Generator(np.random.Philox(6))
    pairs = [(_random_measure(rng), _random_measure(rng)) for _ in range(sizes.random_pairs)]
    values = [raw_affinity(p.normalized(), q.normalized()) for p, q in pairs]
    in_range = all(-AFFINITY_TOLERANCE <= value <= 1 + AFFINITY_TOLERANCE for value in values)
    return worst <= tol.affinity and in_range, f"closed-form error {worst:.1e}, {len(values)} random pairs in [0,1]: {in_range}"

def bellow_losert_bound(ctx: TransactionContext, sizes: SuiteSizes, tol: Tolerances) -> tuple[bool, str]:
    pairs = list(itertools.combinations(PAIR_SEQUENCES, 2))[:sizes.pair_count]
    sequences = {name: resolve_sequence(name, ctx, sizes.pair_n) for name in PAIR_SEQUENCES}
    failures = []
    for g, h in pairs:
        report = bellow_losert_check(sequences[g], sequences[h], [sizes.pair_n], tol.slack, ctx.config.workers, strict=True)
        if report.holds is False:
            failures.append(f"{g}|{h}")
    return not failures, f"{len(pairs)} pairs at n={sizes.pair_n}, failing: {', '.join(failures) or 'none'}"

def hoeffding_azuma(ctx: TransactionContext, sizes: SuiteSizes, tol: Tolerances) -> tuple[bool, str]:
    scale = math.sqrt(sizes.ha_m)
    report = hoeffding_azuma_check(np.ones(sizes.ha_m), [t * scale for t in (1, 2, 3)], sizes.ha_trials, 0, mc_sigmas=tol.mc_sigmas)
    detail = ", ".join(f"t={row.t / scale:g}: {row.empirical:.2e} <= {row.bound:.2e}" for row in report.rows)
    return report.passed, f"{sizes.ha_trials} trials, {detail}"

def entropy_discrimination(ctx: TransactionContext, sizes: SuiteSizes, tol: Tolerances) -> tuple[bool, str]:
    thue_morse = entropy_estimate(SequenceGenerator.thue_morse(), sizes.zero_entropy_n, sizes.zero_entropy_m)
    rate = thue_morse.log_r_over_m[-1]
    full_shift = entropy_estimate(SequenceGenerator.random_shift(1), sizes.full_shift_n, sizes.full_shift_m)
    relative = abs(full_shift.slope_estimate - math.log(2)) / math.log(2)
    passed = rate <= tol.entropy_rate and _decreasing(thue_morse.log_r_over_m) and relative <= tol.entropy_relative
    return passed, f"thue_morse log r/m = {rate:.4f} at m={thue_morse.m_list[-1]}, full shift slope off by {relative:.2%}"

def orthogonality_decay_check(ctx: TransactionContext, sizes: SuiteSizes, tol: Tolerances) -> tuple[bool, str]:
    low, high = tol.decay_window
    slopes = {}
    for system in ("thue_morse", "rotation:golden"):
        report = orthogonality_decay(SequenceGenerator.parse(system), ctx.table, range(sizes.decay_seeds), sizes.decay_grid)
        slopes[system] = report.mean_slope
    passed = all(slope is not None and low <= slope <= high for slope in slopes.values())
    return passed, ", ".join(f"{system}: {slope:.3f}" for system, slope in slopes.items() if slope is not None)

def deterministic_sums(ctx: TransactionContext, sizes: SuiteSizes, tol: Tolerances) -> tuple[bool, str]:
    top = max(sizes.orthogonality_n)
    cases = {
        "rotation|mu": (SequenceGenerator.rotation("golden").generate(top), "mu"),
        "quadratic_weyl|mu2_centered": (SequenceGenerator.quadratic_weyl("sqrt2").generate(top), "mu2_centered"),
    }
    passed, details = True, []
    for name, (g, kind) in cases.items():
        values = [orthogonality_sum(g, weight_sequence(ctx.table, kind, N), N) for N in sizes.orthogonality_n]
        passed &= values[-1] < tol.orthogonality and _decreasing(values)
        details.append(f"{name}: " + ", ".join(f"{value:.2e}" for value in values))
    return passed, "; ".join(details)

def oracle_equivalence(ctx: TransactionContext, sizes: SuiteSizes, tol: Tolerances) -> tuple[bool, str]:
    rng = np.random.Generator(np.random.Philox(12))
    worst = 0.0
    for _ in range(sizes.oracle_sequences):
        n = int(rng.integers(2, sizes.oracle_length + 1))
        g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        k_max = min(n - 1, 32)
        fast, direct = autocorrelation(g, k_max), direct_autocorrelation(g, k_max)
        worst = max(worst, float(np.abs(fast.f_hat - direct.f_hat).max() / abs(direct.f_hat[0])))
    top = sizes.trial_division_max
    expected = np.array([trial_division_mu(n) for n in range(1, top + 1)], dtype=np.int8)
    sieve_ok = bool(np.array_equal(ctx.table.mu_slice(1, top + 1), expected))
    return worst <= tol.oracle and sieve_ok, f"relative FFT error {worst:.1e}, sieve matches trial division up to {top}: {sieve_ok}"


CRITERIA: dict[int, tuple[str, Callable[[TransactionContext, SuiteSizes, Tolerances], tuple[bool, str]]]] = {
    1: ("mirsky", mirsky_reproduction),
    2: ("squarefree_density", squarefree_density_check),
    3: ("euler_identity", euler_identity),
    4: ("mu2_spectrum", spectrum_consistency),
    5: ("elliott_decay", elliott_decay),
    6: ("affinity_exactness", affinity_exactness),
    7: ("bellow_losert", bellow_losert_bound),
    8: ("hoeffding_azuma", hoeffding_azuma),
    9: ("entropy", entropy_discrimination),
    10: ("random_decay", orthogonality_decay_check),
    11: ("deterministic_sums", deterministic_sums),
    12: ("oracles", oracle_equivalence),
}


@dataclass(eq=False)
class AcceptanceSuite(Transaction):
    suite: SuiteType = "quick"
    criteria: Optional[Sequence[int]] = None
    "criterion numbers to run, all by default"

    @property
    def sizes(self) -> SuiteSizes:
        return SUITES[self.suite]

    def before_gen(self, ctx: TransactionContext) -> int:
        return self.sizes.n_max

    def after_gen(self, ctx: TransactionContext):
        assert ctx.table is not None, "sieve table is missing"
        numbers = sorted(self.criteria) if self.criteria else sorted(CRITERIA)
        artifact = Artifact("report", ["criterion", "passed", "detail"], meta={"suite": self.suite, "runtime": {}})
        for number in numbers:
            name, check = CRITERIA[number]
            begin = time.perf_counter()
            passed, detail = check(ctx, self.sizes, ctx.config.tolerances)
            elapsed = time.perf_counter() - begin
            artifact.add_row(f"{number}-{name}", bool(passed), detail)
            artifact.meta["runtime"][f"{number}-{name}"] = elapsed
            log = logger.info if passed else logger.error
            log("criterion %d %s %s in %.1fs: %s", number, name, "passed" if passed else "FAILED", elapsed, detail)
        artifact.meta["passed"] = all(artifact.column("passed"))
        self.artifacts.append(artifact)
