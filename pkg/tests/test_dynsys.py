import math
import numpy as np
import pytest
from moebiusql.arith.sums import mertens
from moebiusql.dynsys.blocks import block_spanning_count
from moebiusql.dynsys.entropy import bins_for_epsilon, entropy_estimate
from moebiusql.dynsys.generators import SequenceGenerator, rational_approximation
from moebiusql.dynsys.orthogonality import orthogonality_sum, weight_sequence
from moebiusql.utils.errors import ParameterError, RangeError


def test_thue_morse_prefix():
    values = SequenceGenerator.thue_morse().generate(8)
    assert values.real.tolist() == [1, -1, -1, 1, -1, 1, 1, -1]

def test_zero_rotation_is_constant():
    rotation = SequenceGenerator.rotation(0)
    assert np.allclose(rotation.generate(100), 1.0)
    assert rotation.symbols(100).tolist() == [0] * 100

def test_rotation_by_a_quarter():
    assert np.allclose(SequenceGenerator.rotation("1/4").generate(5), [1, 1j, -1, -1j, 1])

def test_two_digit_phases_give_thue_morse():
    q_mult = SequenceGenerator.q_multiplicative(2, [0, "1/2"])
    thue_morse = SequenceGenerator.thue_morse()
    assert np.allclose(q_mult.generate(1024), thue_morse.generate(1024))
    assert q_mult.symbols(1024).tolist() == thue_morse.symbols(1024).tolist()
    assert q_mult.alphabet_size() == 2

@pytest.mark.parametrize("spec", ["thue_morse", "rotation:golden", "quadratic_weyl:sqrt2", "random_shift:7", "q_multiplicative:3:0,1/3,2/3"])
def test_generation_is_addressable(spec):
    gen = SequenceGenerator.parse(spec)
    assert np.allclose(gen.generate(50, start=25), gen.generate(75)[25:])
    assert np.allclose(np.abs(gen.generate(200)), 1.0)

def test_rational_approximation():
    golden = rational_approximation("golden")
    assert golden.denominator <= 2**31 - 1
    assert abs(float(golden) - (math.sqrt(5) - 1) / 2) < 1e-15
    assert rational_approximation("1/3").denominator == 3

def test_parse_names():
    assert SequenceGenerator.parse("rotation:1/3").name == "rotation(1/3)"
    assert SequenceGenerator.parse("random_shift:7").seed == 7
    assert not SequenceGenerator.parse("random_shift").is_zero_entropy
    assert SequenceGenerator.parse(" constant ").is_zero_entropy

@pytest.mark.parametrize("spec", ["bogus", "rotation", "rotation:3/2", "random_shift:x", "q_multiplicative:3:0,1/3", "q_multiplicative:2:1/2,0"])
def test_parse_errors(spec):
    with pytest.raises(ParameterError):
        SequenceGenerator.parse(spec)


def test_constant_has_one_block():
    assert block_spanning_count(np.zeros(1000, dtype=np.int64), 50) == 1

@pytest.mark.parametrize("m, count", [(1, 2), (2, 4), (3, 6), (4, 10)])
def test_thue_morse_block_complexity(m, count):
    assert block_spanning_count(SequenceGenerator.thue_morse().symbols(4096), m) == count

def test_block_count_matches_set():
    rng = np.random.Generator(np.random.Philox(11))
    symbols = rng.integers(0, 3, size=5000)
    for m, n_windows in ((7, None), (9, 2000)):
        windows = n_windows or len(symbols) - m + 1
        expected = len({tuple(symbols[i:i + m].tolist()) for i in range(windows)})
        assert block_spanning_count(symbols, m, n_windows) == expected

def test_block_count_parameters():
    symbols = np.zeros(100, dtype=np.int64)
    with pytest.raises(ParameterError):
        block_spanning_count(symbols, 0)
    with pytest.raises(ParameterError):
        block_spanning_count(symbols, 26)
    with pytest.raises(ParameterError):
        block_spanning_count(symbols, 10, n_windows=92)


def test_thue_morse_entropy_rate():
    table = entropy_estimate(SequenceGenerator.thue_morse(), 2**14, [8, 16, 32, 64, 128, 256])
    assert table.log_r_over_m[-1] <= 0.03
    assert table.r == sorted(table.r)
    assert table.first_below(0.05) is not None

def test_full_shift_entropy():
    table = entropy_estimate(SequenceGenerator.random_shift(3), 2**18, [4, 6, 8, 10])
    assert table.r == [2**m for m in (4, 6, 8, 10)]
    assert table.slope_estimate == pytest.approx(math.log(2), rel=0.02)
    assert table.first_below(0.05) is None

def test_rotation_entropy_slope():
    table = entropy_estimate(SequenceGenerator.rotation("golden"), 2**16, [8, 16, 32, 64, 128, 256])
    assert table.alphabet_size == 64
    assert table.slope_estimate <= 0.05

def test_finer_resolution_sees_more_blocks():
    gen = SequenceGenerator.rotation("sqrt3")
    coarse = entropy_estimate(gen, 2**14, [16, 32, 64], epsilon=1 / 8)
    fine = entropy_estimate(gen, 2**14, [16, 32, 64], epsilon=1 / 64)
    assert coarse.alphabet_size == 8
    assert all(a <= b for a, b in zip(coarse.r, fine.r))

def test_bins_for_epsilon():
    assert bins_for_epsilon(1) == 1
    assert bins_for_epsilon(0.1) == 16
    assert bins_for_epsilon(1 / 64) == 64
    with pytest.raises(ParameterError):
        bins_for_epsilon(0)

def test_entropy_parameters():
    gen = SequenceGenerator.thue_morse()
    with pytest.raises(ParameterError):
        entropy_estimate(gen, 1024, [16, 8])
    with pytest.raises(ParameterError):
        entropy_estimate(gen, 1024, [8, 512])


def test_weight_kinds(table):
    N = 10**4
    mu = weight_sequence(table, "mu", N)
    assert mu.tolist() == table.mu_slice(1, N + 1).astype(float).tolist()
    assert weight_sequence(table, "mu2", N).tolist() == np.abs(mu).tolist()
    assert abs(math.fsum(weight_sequence(table, "mu2_centered", N).tolist())) < 1e-8
    assert np.abs(weight_sequence(table, "mu_rand", N, seed=5)).tolist() == np.abs(mu).tolist()

def test_weight_errors(table):
    with pytest.raises(ParameterError):
        weight_sequence(table, "lambda", 10)
    with pytest.raises(RangeError):
        weight_sequence(table, "mu", table.n_max + 1)

def test_orthogonality_with_constant_is_mertens(table):
    N = 10**4
    assert orthogonality_sum(np.ones(N), weight_sequence(table, "mu", N), N) == pytest.approx(abs(mertens(table, N)) / N)
    with pytest.raises(RangeError):
        orthogonality_sum(np.ones(10), np.ones(20), 20)

@pytest.mark.parametrize("spec", ["rotation:golden", "quadratic_weyl:sqrt2", "thue_morse"])
def test_zero_entropy_sequences_are_orthogonal_to_mu(table, spec):
    N = 10**6
    g = SequenceGenerator.parse(spec).generate(N)
    assert orthogonality_sum(g, weight_sequence(table, "mu", N), N) < 0.02

@pytest.mark.parametrize("kind", ["mu", "mu2", "mu2_centered", "mu_rand"])
def test_orthogonality_sum_is_bounded_by_weight_mass(table, kind):
    N = 10**5
    w = weight_sequence(table, kind, N, seed=2)
    for spec in ("thue_morse", "rotation:golden", "constant"):
        g = 0.5 * SequenceGenerator.parse(spec).generate(N)
        assert orthogonality_sum(g, w, N) <= np.abs(g).max() * math.fsum(np.abs(w).tolist()) / N + 1e-12
