import math
import mpmath
import pytest
from moebiusql.spectral.correlation import elliott_correlations
from moebiusql.spectral.mirsky import mirsky_coefficient, mirsky_truncation_bound, mu_squared_spectrum
from moebiusql.utils.errors import ParameterError
from moebiusql.utils.primes import primes_upto


def euler_product(cutoff: int, factor) -> float:
    "high precision prod_{p <= cutoff} factor(p)"
    with mpmath.workdps(40):
        value = mpmath.mpf(1)
        for p in primes_upto(cutoff).tolist():
            value *= factor(mpmath.mpf(p))
        return float(value)


@pytest.mark.parametrize("cutoff", [10**3, 10**5])
def test_zero_lag_identity(cutoff):
    expected = euler_product(cutoff, lambda p: 1 - 1 / p**2)
    assert abs(mirsky_coefficient(0, cutoff) - expected) <= 1e-14

def test_zero_lag_identity_at_a_million():
    expected = math.exp(math.fsum(math.log1p(-1 / p**2) for p in primes_upto(10**6).tolist()))
    assert abs(mirsky_coefficient(0, 10**6) - expected) <= 1e-14

def test_squarefree_lag():
    expected = euler_product(10**4, lambda p: 1 - 2 / p**2)
    assert mirsky_coefficient(1, 10**4) == pytest.approx(expected, rel=1e-13)
    assert mirsky_coefficient(1) == pytest.approx(0.3226, abs=1e-4)

def test_one_factor_corrections():
    base = mirsky_coefficient(1, 10**4)
    assert mirsky_coefficient(4, 10**4) == pytest.approx(base * 3 / 2, rel=1e-13)
    assert mirsky_coefficient(36, 10**4) == pytest.approx(base * 3 / 2 * 8 / 7, rel=1e-13)
    assert mirsky_coefficient(-4, 10**4) == mirsky_coefficient(4, 10**4)
    assert mirsky_coefficient(6, 10**4) == base

def test_limit_is_six_over_pi_squared():
    gap = abs(mirsky_coefficient(0) - 6 / math.pi**2)
    assert gap <= mirsky_truncation_bound() * mirsky_coefficient(0)

def test_truncation_bound():
    assert mirsky_truncation_bound(10**6) == pytest.approx(2 / (10**6 * math.log(10**6)))
    with pytest.raises(ParameterError):
        mirsky_truncation_bound(1)
    with pytest.raises(ParameterError):
        mirsky_coefficient(0, 1)

def test_squarefree_correlations_follow_mirsky(table):
    correlations = elliott_correlations(table, 10**6, 16, squared=True)
    for k in range(17):
        assert abs(correlations[k].real - mirsky_coefficient(k)) <= 5e-3


def test_spectrum_fourier_coefficients():
    measure = mu_squared_spectrum(1000)
    for k in range(17):
        assert abs(measure.fourier_coefficient(k) - mirsky_coefficient(k)) <= 1e-3
    assert abs(measure.total_mass - 6 / math.pi**2) <= 1e-3

def test_spectrum_mass_is_monotone():
    masses = [mu_squared_spectrum(d_max, 10**4).total_mass for d_max in (1, 10, 100, 1000)]
    assert all(a <= b for a, b in zip(masses, masses[1:]))
    assert masses[-1] <= mirsky_coefficient(0, 10**4) + 1e-15
    assert masses[0] == pytest.approx(mirsky_coefficient(1, 10**4))

def test_spectrum_combs_are_squarefree_squares():
    measure = mu_squared_spectrum(12)
    assert [comb.q for comb in measure.combs] == [1, 4, 9, 25, 36, 49, 100, 121]
    assert len(measure.weights) == 0
    assert measure.atom_count == 1 + 4 + 9 + 25 + 36 + 49 + 100 + 121

def test_spectrum_parameters():
    with pytest.raises(ParameterError):
        mu_squared_spectrum(0)
