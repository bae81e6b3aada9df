from moebiusql.dynsys.generators import (
    GeneratorKind,
    SequenceGenerator,
    NAMED_IRRATIONALS,
    rational_approximation,
)
from moebiusql.dynsys.blocks import block_spanning_count
from moebiusql.dynsys.entropy import EntropyTable, entropy_estimate, bins_for_epsilon
from moebiusql.dynsys.orthogonality import WEIGHT_KINDS, weight_sequence, orthogonality_sum
