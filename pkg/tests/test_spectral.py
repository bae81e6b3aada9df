import numpy as np
import pytest
from moebiusql.arith.sums import squarefree_density
from moebiusql.dynsys.generators import SequenceGenerator, rational_approximation
from moebiusql.spectral.correlation import (
    autocorrelation,
    direct_autocorrelation,
    elliott_correlations,
    linear_form_correlation,
    toeplitz_min_eigenvalue,
)
from moebiusql.spectral.diagnostics import davenport_sup, flatness
from moebiusql.spectral.periodogram import periodogram, periodogram_coefficient
from moebiusql.utils.errors import ParameterError, RangeError


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(7))


def test_fft_matches_direct_summation(rng):
    for n in (1, 2, 3, 17, 256, 1000, 4097):
        g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        k_max = min(n - 1, 32)
        fast, direct = autocorrelation(g, k_max), direct_autocorrelation(g, k_max)
        assert np.abs(fast.f_hat - direct.f_hat).max() <= 1e-10 * abs(direct.f_hat[0])

def test_constant_sequence_correlations():
    table = autocorrelation(np.ones(10), 3)
    assert np.allclose(table.f_hat, [1.0, 0.9, 0.8, 0.7])
    assert table.truncation_slack(3) == pytest.approx(0.3)

def test_hermitian_extension_and_toeplitz(rng):
    g = np.exp(2j * np.pi * rng.random(500))
    table = autocorrelation(g, 8)
    assert table[-3] == pytest.approx(np.conj(table[3]))
    extension = table.hermitian_extension()
    assert len(extension) == 17
    assert extension[8] == pytest.approx(table[0])
    assert toeplitz_min_eigenvalue(table) >= -1e-8

def test_rotation_correlations_follow_the_rotation_angle():
    n, k_max = 4096, 64
    alpha = float(rational_approximation("golden"))
    table = autocorrelation(SequenceGenerator.rotation("golden").generate(n), k_max)
    for k in range(k_max + 1):
        limit = np.exp(2j * np.pi * k * alpha)
        assert abs(table[k] - limit * (n - k) / n) <= 1e-9
        assert abs(table[k] - limit) <= k / n + 1e-9

def test_quadratic_weyl_correlations_obey_the_geometric_sum_bound():
    n, k_max = 4096, 32
    alpha = float(rational_approximation("sqrt2"))
    table = autocorrelation(SequenceGenerator.quadratic_weyl("sqrt2").generate(n), k_max)
    for k in range(1, k_max + 1):
        bound = 2 / (n * abs(np.sin(4 * np.pi * k * alpha))) + k / n
        assert abs(table[k]) <= bound + 1e-9

def test_lag_range():
    with pytest.raises(RangeError):
        autocorrelation(np.ones(4), 4)
    with pytest.raises(ParameterError):
        autocorrelation(np.array([]), 0)


def test_periodogram_closed_forms():
    assert np.allclose(periodogram([1], 4).density, 1.0)
    assert np.allclose(periodogram([1, 1], 4).density, [2, 1, 0, 1])

def test_periodogram_grid_checks():
    with pytest.raises(ParameterError):
        periodogram(np.ones(8), 12)
    with pytest.raises(ParameterError):
        periodogram(np.ones(8), 4)

def test_parseval_mass(table):
    n = 10**6
    pgram = periodogram(table.mu_slice(1, n + 1), 2**21)
    assert abs(pgram.mass - squarefree_density(table, n)) <= 1e-9

def test_periodogram_coefficients_are_correlations(rng):
    g = rng.choice([-1.0, 1.0], size=300)
    pgram = periodogram(g, 1024)
    correlations = autocorrelation(g, 5)
    for k in range(6):
        assert periodogram_coefficient(pgram, k) == pytest.approx(correlations[k], abs=1e-12)

def test_elliott_against_periodogram(table):
    N, h_max = 4096, 10
    elliott = elliott_correlations(table, N, h_max)
    pgram = periodogram(table.mu_slice(1, N + 1), 2 * N)
    for h in range(h_max + 1):
        assert abs(elliott[h] - periodogram_coefficient(pgram, h)) <= h / N + 1e-12

def test_elliott_zero_lag_is_density(table):
    assert elliott_correlations(table, 10**5, 0)[0] == pytest.approx(0.60794)
    assert elliott_correlations(table, 10**5, 0, squared=True)[0] == pytest.approx(0.60794)

def test_elliott_range(table):
    with pytest.raises(RangeError):
        elliott_correlations(table, table.n_max, 1)

def test_linear_forms(table):
    N = 10**5
    assert linear_form_correlation(table, N, 1, 0, 1, 1) == pytest.approx(elliott_correlations(table, N, 1)[1].real)
    assert abs(linear_form_correlation(table, N, 2, 1, 3, 1)) < 0.02
    with pytest.raises(ParameterError):
        linear_form_correlation(table, N, 1, 0, 2, 0)


def test_flatness_single_term(table):
    result = flatness(table, 1)
    assert result.l1_over_l2 == pytest.approx(1.0)
    assert result.flatness_integral == pytest.approx(0.0, abs=1e-12)
    assert result.norm_squared == pytest.approx(1.0)

def test_flatness_values_are_bounded(table):
    result = flatness(table, 10**4)
    assert 0 < result.l1_over_l2 <= 1 + 1e-12
    assert result.norm_squared == pytest.approx(squarefree_density(table, 10**4))
    assert result.decorrelation_bound == pytest.approx(result.norm_squared * result.flatness_integral)

def test_flatness_grid_check(table):
    with pytest.raises(ParameterError):
        flatness(table, 100, grid_size=512)

def test_davenport_small_cases(table):
    assert davenport_sup(table, 1) == pytest.approx(1.0)
    assert davenport_sup(table, 2) == pytest.approx(1.0)

def test_davenport_decreases(table):
    values = [davenport_sup(table, x) for x in (10**3, 10**4, 10**5, 10**6)]
    assert all(b < a for a, b in zip(values, values[1:]))
