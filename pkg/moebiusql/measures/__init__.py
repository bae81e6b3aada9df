from moebiusql.measures.circle import CircleMeasure, DiracComb, DEFAULT_ATOM_BUDGET
from moebiusql.measures.affinity import affinity, raw_affinity, hellinger
from moebiusql.measures.checks import (
    DEFAULT_SLACK,
    BellowLosertRow,
    BellowLosertReport,
    bellow_losert_check,
    L1BoundReport,
    l1_sqrt_bound_check,
    SemicontinuityReport,
    semicontinuity_check,
)
