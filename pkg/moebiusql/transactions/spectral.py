from dataclasses import dataclass
from typing import Optional, Sequence
import numpy as np
from moebiusql.arith.sums import squarefree_density
from moebiusql.artifacts.artifact import Artifact, PlotSpec
from moebiusql.dynsys.generators import SequenceGenerator
from moebiusql.spectral.correlation import CorrelationTable, autocorrelation, elliott_correlations, toeplitz_min_eigenvalue
from moebiusql.spectral.diagnostics import davenport_sup, flatness
from moebiusql.spectral.mirsky import DEFAULT_PRIME_CUTOFF, mirsky_coefficient, mirsky_truncation_bound, mu_squared_spectrum
from moebiusql.spectral.periodogram import periodogram
from moebiusql.transaction import LabeledTransaction, Transaction, TransactionContext
from moebiusql.utils.numeric import next_power_of_two

ARITHMETIC_SEQUENCES = ("mu", "mu2")


def _correlation_artifact(table: CorrelationTable, meta: dict) -> Artifact:
    artifact = Artifact("corr", ["k", "re", "im"], meta=meta, plot=PlotSpec("k", ["re", "im"]))
    for k, value in enumerate(table.f_hat.tolist()):
        artifact.add_row(k, value.real, value.imag)
    return artifact


@dataclass(eq=False)
class Correlations(LabeledTransaction):
    "correlations of mu, mu^2 or a generator; the label names the sequence"

    n: int = 10**6
    "sample length"

    k_max: int = 16
    "largest lag"

    def before_gen(self, ctx: TransactionContext) -> int:
        return self.n + self.k_max if self.label in ARITHMETIC_SEQUENCES else 0

    def after_gen(self, ctx: TransactionContext):
        if self.label in ARITHMETIC_SEQUENCES:
            assert ctx.table is not None, "sieve table is missing"
            table = elliott_correlations(ctx.table, self.n, self.k_max, squared=self.label == "mu2")
        else:
            table = autocorrelation(SequenceGenerator.parse(self.label).generate(self.n), self.k_max, ctx.config.workers)
        meta = {
            "sequence": self.label,
            "n": self.n,
            "k_max": self.k_max,
            "toeplitz_min_eigenvalue": toeplitz_min_eigenvalue(table),
        }
        self.artifacts.append(_correlation_artifact(table, meta))


@dataclass(eq=False)
class MirskyCorrelations(Transaction):
    n: int = 10**6
    k_max: int = 16
    prime_cutoff: int = DEFAULT_PRIME_CUTOFF

    def before_gen(self, ctx: TransactionContext) -> int:
        return self.n + self.k_max

    def after_gen(self, ctx: TransactionContext):
        assert ctx.table is not None, "sieve table is missing"
        table = elliott_correlations(ctx.table, self.n, self.k_max, squared=True)
        artifact = Artifact(
            "corr",
            ["k", "re", "im", "predicted"],
            meta={
                "sequence": "mu2",
                "n": self.n,
                "k_max": self.k_max,
                "prime_cutoff": self.prime_cutoff,
                "truncation_bound": mirsky_truncation_bound(self.prime_cutoff),
            },
            plot=PlotSpec("k", ["re", "predicted"]),
        )
        gaps = []
        for k, value in enumerate(table.f_hat.tolist()):
            predicted = mirsky_coefficient(k, self.prime_cutoff)
            gaps.append(abs(value.real - predicted))
            artifact.add_row(k, value.real, value.imag, predicted)
        artifact.meta["max_gap"] = max(gaps)
        self.artifacts.append(artifact)


@dataclass(eq=False)
class Spectrum(Transaction):
    "periodogram of mu(1..n) plus the mu^2 spectral measure"

    n: int = 2**16
    grid_size: Optional[int] = None
    d_max: int = 1000
    prime_cutoff: int = DEFAULT_PRIME_CUTOFF

    def before_gen(self, ctx: TransactionContext) -> int:
        return self.n

    def after_gen(self, ctx: TransactionContext):
        assert ctx.table is not None, "sieve table is missing"
        grid_size = self.grid_size or next_power_of_two(2 * self.n)
        pgram = periodogram(ctx.table.mu_slice(1, self.n + 1), grid_size, ctx.config.workers)
        measure = mu_squared_spectrum(self.d_max, self.prime_cutoff)
        artifact = Artifact(
            "spectrum",
            ["theta", "density"],
            list(zip(pgram.theta.tolist(), pgram.density.tolist())),
            meta={
                "n": self.n,
                "grid_size": grid_size,
                "parseval_mass": pgram.mass,
                "squarefree_density": squarefree_density(ctx.table, self.n),
                "d_max": self.d_max,
                "prime_cutoff": self.prime_cutoff,
                "mu2_spectrum_mass": measure.total_mass,
                "truncation_bound": mirsky_truncation_bound(self.prime_cutoff),
            },
            plot=PlotSpec("theta", ["density"]),
            attachments={"mu2_spectrum": measure.to_dict()},
        )
        self.artifacts.append(artifact)


@dataclass(eq=False)
class FlatnessScan(Transaction):
    n_list: Sequence[int] = (10**3, 10**4, 10**5)

    def before_gen(self, ctx: TransactionContext) -> int:
        return max(self.n_list)

    def after_gen(self, ctx: TransactionContext):
        assert ctx.table is not None, "sieve table is missing"
        artifact = Artifact(
            "flatness",
            ["n", "l1_over_l2", "flatness_integral"],
            meta={"norm_squared": {}, "decorrelation_bound": {}},
            plot=PlotSpec("n", ["l1_over_l2", "flatness_integral"], x_scale="log"),
        )
        for n in sorted(self.n_list):
            result = flatness(ctx.table, n, workers=ctx.config.workers)
            artifact.add_row(n, result.l1_over_l2, result.flatness_integral)
            artifact.meta["norm_squared"][str(n)] = result.norm_squared
            artifact.meta["decorrelation_bound"][str(n)] = result.decorrelation_bound
        self.artifacts.append(artifact)


@dataclass(eq=False)
class DavenportScan(Transaction):
    x_list: Sequence[int] = (10**3, 10**4, 10**5, 10**6)

    def before_gen(self, ctx: TransactionContext) -> int:
        return max(self.x_list)

    def after_gen(self, ctx: TransactionContext):
        assert ctx.table is not None, "sieve table is missing"
        artifact = Artifact(
            "davenport",
            ["x", "sup_normalized"],
            plot=PlotSpec("x", ["sup_normalized"], x_scale="log", y_scale="log"),
        )
        values = [davenport_sup(ctx.table, x, workers=ctx.config.workers) for x in sorted(self.x_list)]
        for x, value in zip(sorted(self.x_list), values):
            artifact.add_row(x, value)
        artifact.meta["decreasing"] = bool(np.all(np.diff(values) < 0))
        self.artifacts.append(artifact)
