import logging
from typing import Optional
import numba as nb
import numpy as np
from moebiusql.utils.errors import ParameterError
from moebiusql.utils.types import IntArray

logger = logging.getLogger(__name__)

HASH_MOD_1 = 2147483647
HASH_MOD_2 = 2147483629
HASH_BASE_1 = 1000003
HASH_BASE_2 = 999983


@nb.njit(nogil=True, cache=True)
def _window_keys(symbols, m, n_windows):
    "62-bit double polynomial hash of every window symbols[i:i+m], i < n_windows"
    keys = np.empty(n_windows, dtype=np.int64)
    top_1, top_2 = 1, 1
    for _ in range(m - 1):
        top_1 = top_1 * HASH_BASE_1 % HASH_MOD_1
        top_2 = top_2 * HASH_BASE_2 % HASH_MOD_2
    hash_1, hash_2 = 0, 0
    for t in range(m):
        hash_1 = (hash_1 * HASH_BASE_1 + symbols[t] + 1) % HASH_MOD_1
        hash_2 = (hash_2 * HASH_BASE_2 + symbols[t] + 1) % HASH_MOD_2
    keys[0] = (hash_1 << 31) | hash_2
    for i in range(1, n_windows):
        leaving = symbols[i - 1] + 1
        entering = symbols[i + m - 1] + 1
        hash_1 = ((hash_1 - leaving * top_1 % HASH_MOD_1 + HASH_MOD_1) * HASH_BASE_1 + entering) % HASH_MOD_1
        hash_2 = ((hash_2 - leaving * top_2 % HASH_MOD_2 + HASH_MOD_2) * HASH_BASE_2 + entering) % HASH_MOD_2
        keys[i] = (hash_1 << 31) | hash_2
    return keys


@nb.njit(nogil=True, parallel=True, cache=True)
def _mismatched_windows(symbols, m, representatives, inverse):
    "marks windows whose symbols differ from the representative of their hash"
    mismatched = np.zeros(inverse.shape[0], dtype=np.bool_)
    for i in nb.prange(inverse.shape[0]):
        first = representatives[inverse[i]]
        for t in range(m):
            if symbols[i + t] != symbols[first + t]:
                mismatched[i] = True
                break
    return mismatched


def block_spanning_count(symbols: IntArray, m: int, n_windows: Optional[int] = None) -> int:
    """Number of distinct m-blocks symbols[i:i+m] for i < n_windows.

    Windows are grouped by a rolling hash and every window is compared symbol
    by symbol against its group representative; hash collisions fall back to
    exact byte comparison within the affected groups.
    """
    symbols = np.ascontiguousarray(symbols, dtype=np.int64)
    N = len(symbols)
    if m < 1:
        raise ParameterError(f"block length must be positive, got {m}")
    if 4 * m > N:
        raise ParameterError(f"block length {m} exceeds a quarter of the prefix length {N}")
    max_windows = N - m + 1
    n_windows = max_windows if n_windows is None else n_windows
    if not 1 <= n_windows <= max_windows:
        raise ParameterError(f"n_windows must lie in 1..{max_windows}, got {n_windows}")

    keys = _window_keys(symbols, m, n_windows)
    _, representatives, inverse = np.unique(keys, return_index=True, return_inverse=True)
    count = len(representatives)
    mismatched = _mismatched_windows(symbols, m, representatives, inverse.reshape(-1))
    if mismatched.any():
        groups = np.unique(inverse.reshape(-1)[mismatched])
        logger.warning("%d hash collisions at m=%d, resolving exactly", len(groups), m)
        for group in groups.tolist():
            windows = np.flatnonzero(inverse.reshape(-1) == group)
            count += len({symbols[i:i + m].tobytes() for i in windows.tolist()}) - 1
    return count
