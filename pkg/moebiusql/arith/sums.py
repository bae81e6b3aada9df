import math
import numpy as np
from moebiusql.arith.sieve import SieveTable
from moebiusql.utils.errors import RangeError


def _check_x(table: SieveTable, x: int):
    if not 1 <= x <= table.n_max:
        raise RangeError(f"x={x} outside 1..{table.n_max}")

def mertens(table: SieveTable, x: int) -> int:
    "M(x), the exact partial sum of mu(n) for n <= x"
    _check_x(table, x)
    return int(table.mu_slice(1, x + 1).sum(dtype=np.int64))

def mertens_ratio(table: SieveTable, x: int) -> float:
    return mertens(table, x) / math.sqrt(x)

def landau_sum(table: SieveTable, x: int) -> float:
    "sum of mu(n)/n for n <= x, correctly rounded"
    _check_x(table, x)
    mu = table.mu_slice(1, x + 1)
    n = np.flatnonzero(mu) + 1
    return math.fsum((mu[n - 1] / n).tolist())

def squarefree_density(table: SieveTable, x: int) -> float:
    _check_x(table, x)
    return int(np.count_nonzero(table.mu_slice(1, x + 1))) / x

def mertens_table(table: SieveTable, xs) -> np.ndarray:
    "M(x) for each x in xs from a single cumulative sum"
    xs = np.asarray(xs, dtype=np.int64)
    if len(xs) and (xs.min() < 1 or xs.max() > table.n_max):
        raise RangeError(f"x values must lie in 1..{table.n_max}")
    top = int(xs.max()) if len(xs) else 0
    cumulative = np.cumsum(table.mu_slice(1, top + 1), dtype=np.int64)
    return cumulative[xs - 1]
