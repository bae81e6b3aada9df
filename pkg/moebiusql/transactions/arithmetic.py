import math
from dataclasses import dataclass
from typing import Optional, Sequence
from moebiusql.arith.cache import SieveCache
from moebiusql.arith.sums import landau_sum, mertens_table, squarefree_density
from moebiusql.artifacts.artifact import Artifact, PlotSpec
from moebiusql.transaction import Transaction, TransactionContext


def decade_points(n_max: int) -> list[int]:
    "1, 10, 100, ... up to n_max, plus n_max itself"
    return sorted({10**e for e in range(int(math.log10(n_max)) + 1) if 10**e <= n_max} | {n_max})


@dataclass(eq=False)
class SieveSummary(Transaction):
    n_max: int
    "sieve size"

    x_list: Optional[Sequence[int]] = None
    "points the partial sums are reported at, decades by default"

    def before_gen(self, ctx: TransactionContext) -> int:
        return self.n_max

    def after_gen(self, ctx: TransactionContext):
        table = ctx.table
        assert table is not None, "sieve table is missing"
        x_list = sorted(self.x_list) if self.x_list else decade_points(self.n_max)
        artifact = Artifact(
            "sieve",
            ["x", "mertens", "mertens_ratio", "landau_sum", "squarefree_density"],
            meta={
                "n_max": self.n_max,
                "cache_file": SieveCache.get_file_name(table.n_max, ctx.config.resolved_cache_dir) if ctx.config.use_cache else None,
            },
            plot=PlotSpec("x", ["mertens_ratio", "squarefree_density"], x_scale="log"),
        )
        for x, value in zip(x_list, mertens_table(table, x_list).tolist()):
            artifact.add_row(x, value, value / math.sqrt(x), landau_sum(table, x), squarefree_density(table, x))
        self.artifacts.append(artifact)
