import logging
from typing import Literal
import numpy as np
from moebiusql.arith.sieve import SieveTable
from moebiusql.randmodel.stream import RandomMoebiusStream
from moebiusql.utils.errors import ParameterError, RangeError
from moebiusql.utils.numeric import fsum_complex
from moebiusql.utils.types import FloatArray, SequenceLike, as_complex_array

logger = logging.getLogger(__name__)

WeightKind = Literal["mu", "mu2", "mu2_centered", "mu_rand"]
WEIGHT_KINDS: tuple[WeightKind, ...] = ("mu", "mu2", "mu2_centered", "mu_rand")


def weight_sequence(table: SieveTable, kind: WeightKind, N: int, seed: int = 0) -> FloatArray:
    """w_1..w_N as a float array.

    mu2_centered subtracts the empirical mean of mu^2 over 1..N, removing the
    atom at 0 of the spectral measure of mu^2.
    """
    if not 1 <= N <= table.n_max:
        raise RangeError(f"N={N} outside 1..{table.n_max}")
    if kind == "mu":
        return table.mu_slice(1, N + 1).astype(np.float64)
    if kind == "mu2":
        return table.mu_squared_slice(1, N + 1).astype(np.float64)
    if kind == "mu2_centered":
        squares = table.mu_squared_slice(1, N + 1).astype(np.float64)
        return squares - np.count_nonzero(squares) / N
    if kind == "mu_rand":
        return RandomMoebiusStream(seed, table).sample(1, N + 1).astype(np.float64)
    raise ParameterError(f"unknown weight kind {kind!r}, expected one of {WEIGHT_KINDS}")

def orthogonality_sum(g: SequenceLike, w: SequenceLike, N: int) -> float:
    "|(1/N) sum_{n <= N} g_n w_n|, correctly rounded"
    g, w = as_complex_array(g), as_complex_array(w)
    if N < 1:
        raise ParameterError(f"N must be positive, got {N}")
    if len(g) < N or len(w) < N:
        raise RangeError(f"sequences of lengths {len(g)} and {len(w)} are shorter than N={N}")
    return abs(fsum_complex(g[:N] * w[:N])) / N
