import math
from dataclasses import dataclass, field
from typing import Sequence
import numpy as np
from moebiusql.artifacts.artifact import Artifact, PlotSpec
from moebiusql.dynsys.generators import SequenceGenerator
from moebiusql.randmodel.concentration import DEFAULT_MC_SIGMAS, hoeffding_azuma_check
from moebiusql.randmodel.experiments import borel_cantelli_summability, orthogonality_decay, union_bound_experiment
from moebiusql.transaction import LabeledTransaction, Transaction, TransactionContext

BOREL_CANTELLI_Q_MAX = 10**6


@dataclass(eq=False)
class DecaySimulation(LabeledTransaction):
    seeds: Sequence[int] = field(default_factory=lambda: list(range(50)))
    n_grid: Sequence[int] = field(default_factory=lambda: [2**e for e in range(10, 23)])

    def before_gen(self, ctx: TransactionContext) -> int:
        return max(self.n_grid)

    def after_gen(self, ctx: TransactionContext):
        assert ctx.table is not None, "sieve table is missing"
        report = orthogonality_decay(SequenceGenerator.parse(self.label), ctx.table, self.seeds, self.n_grid)
        artifact = Artifact(
            "decay",
            ["seed", "n", "s_n"],
            report.rows(),
            meta={
                "system": report.system,
                "mean_slope": report.mean_slope,
                "slopes": dict(zip(map(str, report.seeds), report.slopes)),
                "excluded": report.excluded,
                "decay_window": list(ctx.config.tolerances.decay_window),
            },
            plot=PlotSpec("n", ["s_n"], x_scale="log", y_scale="log"),
        )
        self.artifacts.append(artifact)


@dataclass(eq=False)
class UnionBound(LabeledTransaction):
    n: int = 1
    "first index of the random Moebius segment"

    m: int = 1000
    delta: float = 0.1
    seeds: Sequence[int] = field(default_factory=lambda: list(range(50)))
    "trials run on the contiguous seeds min(seeds), ..., min(seeds) + len(seeds) - 1"

    mc_sigmas: float = DEFAULT_MC_SIGMAS

    def before_gen(self, ctx: TransactionContext) -> int:
        return self.n + self.m - 1

    def after_gen(self, ctx: TransactionContext):
        assert ctx.table is not None, "sieve table is missing"
        seed_offset = min(self.seeds)
        report = union_bound_experiment(
            SequenceGenerator.parse(self.label), ctx.table, self.n, self.m, self.delta,
            len(self.seeds), seed_offset=seed_offset, mc_sigmas=self.mc_sigmas,
        )
        borel_cantelli = borel_cantelli_summability(BOREL_CANTELLI_Q_MAX)
        artifact = Artifact(
            "union",
            ["seed", "sup_y", "exceeds"],
            [(seed_offset + i, value, value > 3 * self.delta) for i, value in enumerate(report.sup_values)],
            meta={
                "system": report.system,
                "m": report.m,
                "delta": report.delta,
                "r": report.r,
                "bound": report.bound,
                "entropy_bound": report.entropy_bound,
                "frequency": report.frequency,
                "slack": report.slack,
                "passed": report.passed,
                "borel_cantelli": borel_cantelli._asdict(),
            },
            plot=PlotSpec("seed", ["sup_y"]),
        )
        self.artifacts.append(artifact)


@dataclass(eq=False)
class ConcentrationCheck(Transaction):
    m: int = 1000
    t_list: Sequence[float] = (1.0, 2.0, 3.0)
    "thresholds in units of sqrt(sum c_j^2)"

    trials: int = 10**5
    seed: int = 0
    martingale: bool = False
    mc_sigmas: float = DEFAULT_MC_SIGMAS

    def after_gen(self, ctx: TransactionContext):
        c = np.ones(self.m)
        scale = math.sqrt(self.m)
        report = hoeffding_azuma_check(
            c, [t * scale for t in self.t_list], self.trials, self.seed, self.martingale, self.mc_sigmas
        )
        artifact = Artifact(
            "concentration",
            ["t", "empirical", "bound", "slack", "passed"],
            [(t, row.empirical, row.bound, row.slack, row.passed) for t, row in zip(self.t_list, report.rows)],
            meta={
                "m": self.m,
                "trials": self.trials,
                "seed": self.seed,
                "martingale": self.martingale,
                "t_scale": scale,
                "gaussian": [row.gaussian for row in report.rows],
                "passed": report.passed,
            },
            plot=PlotSpec("t", ["empirical", "bound"], y_scale="log"),
        )
        self.artifacts.append(artifact)
