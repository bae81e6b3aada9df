import logging
from dataclasses import dataclass
from typing import Optional
import numpy as np
import numpy.typing as npt
import scipy.fft
import scipy.linalg
from moebiusql.arith.sieve import SieveTable
from moebiusql.utils.errors import ParameterError, RangeError
from moebiusql.utils.numeric import next_power_of_two
from moebiusql.utils.types import ComplexArray, SequenceLike, as_complex_array

logger = logging.getLogger(__name__)

TOEPLITZ_MAX_LAG = 32


@dataclass(frozen=True, eq=False)
class CorrelationTable:
    n: int
    "sample length the correlations are normalised by"

    k_max: int
    "largest lag"

    f_hat: ComplexArray
    "f_hat[k] = (1/n) sum_{j < n-k} g_{j+k} conj(g_j), k = 0..k_max"

    sup_norm: float = 1.0
    "sup |g| of the underlying sequence"

    def __post_init__(self):
        assert len(self.f_hat) == self.k_max + 1, "f_hat must hold lags 0..k_max"

    def __getitem__(self, k: int) -> complex:
        if k < 0:
            return complex(np.conj(self.f_hat[-k]))
        return complex(self.f_hat[k])

    def truncation_slack(self, k: int) -> float:
        "bound on the boundary term for lag k, (k/n) sup|g|^2"
        return abs(k) * self.sup_norm**2 / self.n

    def hermitian_extension(self) -> ComplexArray:
        "F(-k_max)..F(k_max) with F(-k) = conj(F(k))"
        return np.concatenate([np.conj(self.f_hat[:0:-1]), self.f_hat])

    def toeplitz(self, k_max: Optional[int] = None) -> npt.NDArray[np.complex128]:
        k_max = self.k_max if k_max is None else k_max
        column = self.f_hat[:k_max + 1]
        return scipy.linalg.toeplitz(column, np.conj(column))


def autocorrelation(g: SequenceLike, k_max: int, workers: Optional[int] = None) -> CorrelationTable:
    """Truncated autocorrelations of g up to lag k_max.

    The sums are one-sided (no circular wrap): g is zero padded to a power of
    two of at least twice its length before the FFT.
    """
    g = as_complex_array(g)
    n = len(g)
    if n < 1:
        raise ParameterError("autocorrelation needs at least one sample")
    if not 0 <= k_max < n:
        raise RangeError(f"k_max={k_max} must satisfy 0 <= k_max < n={n}")

    size = next_power_of_two(2 * n)
    spectrum = scipy.fft.fft(g, size, workers=workers)
    power = (spectrum * np.conj(spectrum)).real
    f_hat = scipy.fft.ifft(power, workers=workers)[:k_max + 1] / n
    f_hat[0] = f_hat[0].real
    return CorrelationTable(n, k_max, f_hat, float(np.abs(g).max()))

def direct_autocorrelation(g: SequenceLike, k_max: int) -> CorrelationTable:
    "O(n k_max) summation, used as the oracle for autocorrelation"
    g = as_complex_array(g)
    n = len(g)
    if not 0 <= k_max < n:
        raise RangeError(f"k_max={k_max} must satisfy 0 <= k_max < n={n}")
    f_hat = np.array([np.vdot(g[:n - k], g[k:]) for k in range(k_max + 1)], dtype=np.complex128) / n
    return CorrelationTable(n, k_max, f_hat, float(np.abs(g).max()))

def toeplitz_min_eigenvalue(table: CorrelationTable, k_max: int = TOEPLITZ_MAX_LAG) -> float:
    "smallest eigenvalue of the Hermitian Toeplitz matrix built from lags 0..k_max"
    k_max = min(k_max, table.k_max)
    return float(np.linalg.eigvalsh(table.toeplitz(k_max)).min())


def elliott_correlations(table: SieveTable, N: int, h_max: int, squared: bool = False) -> CorrelationTable:
    """c_N(h) = (1/N) sum_{n <= N} mu(n) mu(n+h) for h = 0..h_max.

    Sums are exact integer dot products; `squared` replaces mu by mu^2.
    """
    if N < 1 or h_max < 0:
        raise ParameterError(f"need N >= 1 and h_max >= 0, got N={N}, h_max={h_max}")
    if N + h_max > table.n_max:
        raise RangeError(f"N + h_max = {N + h_max} exceeds the table size {table.n_max}")
    values = table.mu_squared_slice(1, N + h_max + 1) if squared else table.mu_slice(1, N + h_max + 1)
    values = values.astype(np.int64)
    head = values[:N]
    sums = np.array([int(np.dot(head, values[h:h + N])) for h in range(h_max + 1)], dtype=np.int64)
    logger.debug("elliott sums N=%d: %s", N, sums)
    return CorrelationTable(N, h_max, sums.astype(np.complex128) / N)

def linear_form_correlation(table: SieveTable, N: int, a: int, b: int, A: int, B: int) -> float:
    "(1/N) sum_{n <= N} mu(a n + b) mu(A n + B) for independent linear forms"
    if a < 1 or A < 1 or b < 0 or B < 0:
        raise ParameterError("linear forms need a, A >= 1 and b, B >= 0")
    if a * B == A * b:
        raise ParameterError(f"linear forms are dependent, aB = Ab = {a * B}")
    top = max(a * N + b, A * N + B)
    if top > table.n_max:
        raise RangeError(f"largest argument {top} exceeds the table size {table.n_max}")
    mu = table.mu_slice(1, top + 1).astype(np.int64)
    n = np.arange(1, N + 1, dtype=np.int64)
    return int(np.dot(mu[a * n + b - 1], mu[A * n + B - 1])) / N
