from moebiusql.randmodel.stream import RandomMoebiusStream, sample
from moebiusql.randmodel.concentration import (
    ConcentrationRow,
    ConcentrationReport,
    hoeffding_azuma_check,
    hoeffding_bound,
    gaussian_tail,
)
from moebiusql.randmodel.experiments import (
    BlockAverage,
    block_average,
    BlockDecomposition,
    block_decomposition,
    UnionBoundReport,
    union_bound_experiment,
    DecayReport,
    orthogonality_decay,
    BorelCantelli,
    borel_cantelli_summability,
)
