import math
from fractions import Fraction
import numpy as np
import pytest
from moebiusql.dynsys.generators import SequenceGenerator
from moebiusql.measures.affinity import affinity, hellinger, raw_affinity
from moebiusql.measures.checks import bellow_losert_check, l1_sqrt_bound_check, semicontinuity_check
from moebiusql.measures.circle import CircleMeasure, DiracComb
from moebiusql.utils.errors import ParameterError, RangeError, TrivialSequenceError

GRID = 2**14


@pytest.fixture
def mixed() -> CircleMeasure:
    "1/2 Lebesgue + 1/2 delta_0"
    return CircleMeasure.from_atoms([(0, 0.5)], np.full(GRID, 0.5))


def test_identical_measures(mixed):
    assert affinity(mixed, mixed) == pytest.approx(1.0, abs=1e-9)
    assert hellinger(mixed, mixed) == pytest.approx(0.0, abs=1e-4)

def test_disjoint_atoms():
    assert affinity(CircleMeasure.dirac(0), CircleMeasure.dirac("1/2")) == 0.0
    assert hellinger(CircleMeasure.dirac(0), CircleMeasure.dirac("1/2")) == pytest.approx(math.sqrt(2), abs=1e-9)

def test_lebesgue_against_mixed(mixed):
    lebesgue = CircleMeasure.lebesgue(GRID)
    assert affinity(lebesgue, mixed) == pytest.approx(1 / math.sqrt(2), abs=1e-9)
    assert hellinger(lebesgue, mixed) == pytest.approx(math.sqrt(2 - math.sqrt(2)), abs=1e-9)

def test_affinity_normalises_first():
    p = CircleMeasure.dirac(0, 4.0)
    q = CircleMeasure.dirac(0, 0.25)
    assert raw_affinity(p, q) == pytest.approx(1.0)
    assert affinity(p, q) == pytest.approx(1.0)
    assert affinity(CircleMeasure.lebesgue(64, 3.0), CircleMeasure.lebesgue(256)) == pytest.approx(1.0)

def test_random_pairs_stay_in_unit_interval():
    rng = np.random.Generator(np.random.Philox(3))
    for _ in range(200):
        atoms = [((int(rng.integers(0, q)), q), float(rng.random())) for q in rng.integers(1, 9, size=3).tolist()]
        p = CircleMeasure.from_atoms(atoms, rng.random(128))
        q = CircleMeasure.from_atoms(atoms[:1], rng.random(512))
        value = raw_affinity(p.normalized(), q.normalized())
        assert -1e-9 <= value <= 1 + 1e-9
        assert value == pytest.approx(affinity(p, q), abs=1e-12)
        assert affinity(p, q) == pytest.approx(affinity(q, p), abs=1e-12)

def test_small_mismatched_grids_stay_in_unit_interval():
    rng = np.random.Generator(np.random.Philox(12))
    for _ in range(500):
        p = CircleMeasure.from_atoms([], rng.random(int(rng.integers(2, 7))))
        q = CircleMeasure.from_atoms([], rng.random(int(rng.integers(2, 7))))
        assert -1e-9 <= raw_affinity(p.normalized(), q.normalized()) <= 1 + 1e-9
        assert -1e-9 <= affinity(p, q) <= 1 + 1e-9

def test_coarse_density_matches_itself_on_a_finer_grid():
    coarse = CircleMeasure.from_atoms([], np.array([0.0, 3.0, 1.0]))
    fine = coarse.resampled(12)
    assert fine.total_mass == pytest.approx(coarse.total_mass)
    assert affinity(coarse, fine) == pytest.approx(1.0, abs=1e-12)

def test_common_grid_limit():
    with pytest.raises(ParameterError):
        affinity(CircleMeasure.lebesgue(2**14 + 1), CircleMeasure.lebesgue(2**14 - 1))

def test_affinity_is_invariant_under_joint_rotation():
    rng = np.random.Generator(np.random.Philox(21))
    for _ in range(20):
        atoms = [((int(rng.integers(0, q)), q), float(rng.random())) for q in rng.integers(1, 9, size=4).tolist()]
        p = CircleMeasure.from_atoms(atoms, rng.random(64))
        q = CircleMeasure.from_atoms(atoms[1:], rng.random(128))
        for angle in ("1/4", "3/8", Fraction(1, 16)):
            assert affinity(p.rotated(angle), q.rotated(angle)) == pytest.approx(affinity(p, q), abs=1e-9)
    p, q = CircleMeasure.from_atoms([("1/3", 1.0), ("1/2", 1.0)]), CircleMeasure.from_atoms([("1/3", 2.0)])
    assert affinity(p.rotated("2/7"), q.rotated("2/7")) == affinity(p, q)

def test_zero_mass_cannot_normalise():
    with pytest.raises(ParameterError):
        affinity(CircleMeasure(), CircleMeasure.dirac(0))


def test_atoms_merge_exactly():
    measure = CircleMeasure.from_atoms([(Fraction(1, 2), 1.0), (Fraction(2, 4), 1.0), ("3/2", 0.5)])
    assert measure.numerators.tolist() == [1]
    assert measure.denominators.tolist() == [2]
    assert measure.weights.tolist() == [2.5]

def test_negative_weights_rejected():
    with pytest.raises(ParameterError):
        CircleMeasure.from_atoms([(0, -1.0)])

def test_combs_materialise_into_merged_atoms():
    measure = CircleMeasure(combs=(DiracComb(2, 1.0), DiracComb(4, 1.0)))
    atoms = measure.materialized()
    positions = dict(zip(zip(atoms.numerators.tolist(), atoms.denominators.tolist()), atoms.weights.tolist()))
    assert positions == {(0, 1): 2.0, (1, 2): 2.0, (1, 4): 1.0, (3, 4): 1.0}
    assert atoms.total_mass == measure.total_mass == 6.0
    with pytest.raises(ParameterError):
        measure.materialized(atom_budget=5)

def test_comb_fourier_coefficients_match_atoms():
    measure = CircleMeasure(combs=(DiracComb(4, 0.25), DiracComb(9, 0.1)))
    atoms = measure.materialized()
    for k in range(0, 40):
        assert measure.fourier_coefficient(k) == pytest.approx(atoms.fourier_coefficient(k), abs=1e-12)
    assert measure.fourier_coefficient(36) == pytest.approx(1.9)
    assert measure.fourier_coefficient(2) == pytest.approx(0.0, abs=1e-12)

def test_lebesgue_fourier_coefficients():
    lebesgue = CircleMeasure.lebesgue(64, 2.0)
    assert lebesgue.fourier_coefficient(0) == pytest.approx(2.0)
    assert lebesgue.fourier_coefficient(5) == pytest.approx(0.0, abs=1e-12)

def test_rotation():
    rotated = CircleMeasure.dirac("2/3").rotated("1/2")
    assert (rotated.numerators.tolist(), rotated.denominators.tolist()) == ([1], [6])
    density = np.arange(8, dtype=np.float64)
    grid = CircleMeasure(ac_density=density).rotated("1/4")
    assert grid.ac_density.tolist() == np.roll(density, 2).tolist()
    with pytest.raises(ParameterError):
        CircleMeasure(ac_density=density).rotated("1/3")

def test_resampling_is_periodic():
    measure = CircleMeasure(ac_density=np.array([0.0, 2.0]))
    assert measure.on_grid(4).tolist() == [0.0, 1.0, 2.0, 1.0]

def test_json_keeps_combs_and_density():
    measure = CircleMeasure.from_atoms([("1/3", 0.2)], np.full(8, 0.5), [DiracComb(4, 0.1)])
    restored = CircleMeasure.from_json(measure.to_json())
    assert restored.to_dict() == measure.to_dict()
    assert "mass=" in repr(restored)


def test_bellow_losert_for_generator_pairs():
    n_list = [2**10, 2**14]
    sequences = [SequenceGenerator.parse(spec).generate(2**14) for spec in ("rotation:golden", "thue_morse", "quadratic_weyl:sqrt2")]
    for g in sequences:
        for h in sequences:
            report = bellow_losert_check(g, h, n_list)
            assert report.holds
            for row in report.rows:
                assert row.cross_sum <= row.raw_affinity + 1e-9
                assert row.raw_affinity <= row.affinity + 1e-9

def test_bellow_losert_identical_sequences():
    g = SequenceGenerator.thue_morse().generate(4096)
    row = bellow_losert_check(g, g, [4096]).rows[0]
    assert row.cross_sum == pytest.approx(1.0)
    assert row.affinity == pytest.approx(1.0)

def test_bellow_losert_trivial_sequence():
    report = bellow_losert_check(np.zeros(256), np.ones(256), [256])
    assert report.trivial
    assert report.holds is None
    with pytest.raises(TrivialSequenceError):
        bellow_losert_check(np.ones(256), np.zeros(256), [256], strict=True)

def test_bellow_losert_lengths():
    with pytest.raises(RangeError):
        bellow_losert_check(np.ones(10), np.ones(20), [20])
    with pytest.raises(ParameterError):
        bellow_losert_check(np.ones(10), np.ones(10), [])

def test_l1_bound_against_lebesgue():
    rng = np.random.Generator(np.random.Philox(1))
    g = rng.choice([-1.0, 1.0], size=4096)
    report = l1_sqrt_bound_check(g, 4096, reference_ac_density=1.0)
    assert report.holds
    assert report.l1 <= 1.0

def test_l1_bound_without_reference(table):
    report = l1_sqrt_bound_check(table.mu_slice(1, 4097), 4096)
    assert report.bound is None
    assert report.holds is None
    assert 0 < report.l1 < 1

def test_semicontinuity_constant_against_lebesgue():
    g = np.ones(2**18)
    report = semicontinuity_check(g, CircleMeasure.lebesgue(1024), [2**12, 2**14, 2**16, 2**18], limit_affinity=0.0)
    assert report.affinities == sorted(report.affinities, reverse=True)
    assert report.holds
