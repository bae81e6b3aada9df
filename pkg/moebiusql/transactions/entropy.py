from dataclasses import dataclass
from typing import Optional, Sequence
from moebiusql.artifacts.artifact import Artifact, PlotSpec
from moebiusql.dynsys.entropy import entropy_estimate
from moebiusql.dynsys.generators import SequenceGenerator
from moebiusql.transaction import LabeledTransaction, TransactionContext

ZERO_ENTROPY_ETA = 0.05


@dataclass(eq=False)
class EntropyScan(LabeledTransaction):
    N: int = 2**16
    "orbit prefix length"

    m_list: Sequence[int] = (8, 16, 32, 64, 128, 256)
    epsilon: Optional[float] = None

    def after_gen(self, ctx: TransactionContext):
        system = SequenceGenerator.parse(self.label)
        table = entropy_estimate(system, self.N, self.m_list, self.epsilon)
        artifact = Artifact(
            "entropy",
            ["m", "r", "log_r_over_m"],
            list(zip(table.m_list, table.r, table.log_r_over_m)),
            meta={
                "system": system.name,
                "N": self.N,
                "epsilon": self.epsilon,
                "alphabet_size": table.alphabet_size,
                "slope_estimate": table.slope_estimate,
                "zero_entropy": system.is_zero_entropy,
                "m0": table.first_below(ZERO_ENTROPY_ETA),
            },
            plot=PlotSpec("m", ["log_r_over_m"], x_scale="log"),
        )
        self.artifacts.append(artifact)
