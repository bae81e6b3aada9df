from moebiusql.arith.sieve import (
    SieveTable,
    sieve,
    pack_mu,
    unpack_mu,
    trial_division_mu,
    trial_division_omega,
    DEFAULT_SEGMENT_SIZE,
)
from moebiusql.arith.sums import mertens, mertens_ratio, mertens_table, landau_sum, squarefree_density
from moebiusql.arith.cache import SieveCache, load_or_sieve
