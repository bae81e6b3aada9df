from dataclasses import dataclass
from typing import Hashable, Sequence
import numpy as np
from moebiusql.artifacts.artifact import Artifact, PlotSpec
from moebiusql.dynsys.generators import SequenceGenerator
from moebiusql.dynsys.orthogonality import WEIGHT_KINDS, weight_sequence
from moebiusql.measures.checks import DEFAULT_SLACK, bellow_losert_check
from moebiusql.transaction import LabeledTransaction, TransactionContext
from moebiusql.utils.types import ComplexArray


def needs_table(sequence: str) -> bool:
    return sequence in WEIGHT_KINDS

def resolve_sequence(sequence: str, ctx: TransactionContext, n: int, seed: int = 0) -> ComplexArray:
    "a weight kind read from the shared sieve table, otherwise a generator spec"
    if needs_table(sequence):
        assert ctx.table is not None, "sieve table is missing"
        return weight_sequence(ctx.table, sequence, n, seed).astype(np.complex128)
    return SequenceGenerator.parse(sequence).generate(n)


@dataclass(eq=False)
class AffinityCheck(LabeledTransaction):
    "Bellow-Losert check of the label sequence against `other`"

    other: str = "mu"
    n_list: Sequence[int] = (10**3, 10**4, 10**5)
    slack: float = DEFAULT_SLACK

    @property
    def key(self) -> Hashable:
        return (self.label, self.other)

    @property
    def pair(self) -> str:
        return f"{self.label}|{self.other}"

    def before_gen(self, ctx: TransactionContext) -> int:
        return max(self.n_list) if needs_table(self.label) or needs_table(self.other) else 0

    def after_gen(self, ctx: TransactionContext):
        n = max(self.n_list)
        report = bellow_losert_check(
            resolve_sequence(self.label, ctx, n),
            resolve_sequence(self.other, ctx, n),
            self.n_list,
            self.slack,
            ctx.config.workers,
        )
        artifact = Artifact(
            "affinity",
            ["pair", "n", "cross_sum", "affinity", "raw_affinity", "holds"],
            meta={"slack": self.slack, "trivial": report.trivial, "holds": report.holds},
            plot=PlotSpec("n", ["cross_sum", "affinity"], x_scale="log"),
        )
        for row in report.rows:
            artifact.add_row(self.pair, row.n, row.cross_sum, row.affinity, row.raw_affinity, row.cross_sum <= row.affinity + self.slack)
        self.artifacts.append(artifact)
