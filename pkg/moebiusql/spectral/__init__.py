from moebiusql.spectral.correlation import (
    CorrelationTable,
    autocorrelation,
    direct_autocorrelation,
    toeplitz_min_eigenvalue,
    elliott_correlations,
    linear_form_correlation,
)
from moebiusql.spectral.periodogram import Periodogram, periodogram, periodogram_coefficient
from moebiusql.spectral.mirsky import (
    DEFAULT_PRIME_CUTOFF,
    mirsky_coefficient,
    mirsky_truncation_bound,
    mu_squared_spectrum,
)
from moebiusql.spectral.diagnostics import Flatness, flatness, davenport_sup
