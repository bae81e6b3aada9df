import math
import numpy as np
import pytest
from moebiusql.arith.sieve import pack_mu, sieve, trial_division_mu, trial_division_omega, unpack_mu
from moebiusql.arith.sums import landau_sum, mertens, mertens_ratio, mertens_table, squarefree_density
from moebiusql.utils.errors import ParameterError, RangeError


def test_first_values(table):
    assert table.mu_slice(1, 11).tolist() == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert table[30] == -1
    assert table[2 * 3 * 5 * 7] == 1
    assert table[12] == 0

def test_sieve_matches_trial_division(table):
    top = 10**4
    expected = [trial_division_mu(n) for n in range(1, top + 1)]
    assert table.mu_slice(1, top + 1).tolist() == expected
    expected_omega = [trial_division_omega(n) for n in range(1, top + 1)]
    assert table.omega_slice(1, top + 1).tolist() == expected_omega

def test_large_prime_factors(table):
    # 999983 is prime and larger than every base prime
    assert table[999983] == -1
    assert table[2 * 499979] == trial_division_mu(2 * 499979)
    assert table.omega_slice(999983, 999984).tolist() == [1]

def test_sieve_independent_of_segments_and_workers(table):
    n_max = 50_003
    reference = sieve(n_max)
    assert sieve(n_max, segment_size=1024) == reference
    assert sieve(n_max, segment_size=4096, workers=4) == reference
    assert np.array_equal(reference.mu, table.mu_slice(1, n_max + 1))

def test_sieve_small_tables():
    assert sieve(1).mu.tolist() == [1]
    assert sieve(5).mu.tolist() == [1, -1, -1, 0, -1]

def test_sieve_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        sieve(0)
    with pytest.raises(ParameterError):
        sieve(100, segment_size=10)

def test_pack_unpack_offsets():
    mu = np.array([1, -1, -1, 0, -1, 1, -1, 0, 0, 1], dtype=np.int8)
    packed = pack_mu(mu)
    assert len(packed) == 3
    assert unpack_mu(packed, 3, 9).tolist() == mu[3:9].tolist()

def test_table_is_read_only(table):
    with pytest.raises(ValueError):
        table.packed_mu[0] = 0

def test_slice_ranges(table):
    with pytest.raises(RangeError):
        table.mu_slice(0, 5)
    with pytest.raises(RangeError):
        table.mu_slice(1, table.n_max + 2)
    assert len(table.mu_slice(5, 5)) == 0
    assert len(table) == table.n_max

def test_omega_requires_flag():
    with pytest.raises(ParameterError):
        sieve(100).omega_slice(1, 10)


@pytest.mark.parametrize("x, expected", [(1, 1), (10, -1), (100, 1), (1000, 2), (10**4, -23), (10**5, -48), (10**6, 212)])
def test_mertens(table, x, expected):
    assert mertens(table, x) == expected

def test_mertens_table_matches_pointwise(table):
    xs = [1, 10, 100, 1000, 10**4, 10**5, 10**6]
    assert mertens_table(table, xs).tolist() == [mertens(table, x) for x in xs]
    assert mertens_ratio(table, 10**6) == pytest.approx(0.212)

@pytest.mark.parametrize("x, count", [(100, 61), (1000, 608), (10**4, 6083), (10**5, 60794), (10**6, 607926)])
def test_squarefree_counts(table, x, count):
    assert squarefree_density(table, x) == count / x

def test_squarefree_density_limit(table):
    assert abs(squarefree_density(table, 10**6) - 6 / math.pi**2) < 1e-3

def test_landau_sum(table):
    assert landau_sum(table, 1) == 1.0
    assert landau_sum(table, 4) == pytest.approx(1 - 1 / 2 - 1 / 3)
    # sum mu(n)/n tends to 0
    assert abs(landau_sum(table, 10**6)) < 1e-3

def test_sums_reject_out_of_range(table):
    with pytest.raises(RangeError):
        mertens(table, 0)
    with pytest.raises(RangeError):
        squarefree_density(table, table.n_max + 1)
    with pytest.raises(RangeError):
        mertens_table(table, [0, 10])
