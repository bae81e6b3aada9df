import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Optional, Union
import numpy as np
from moebiusql.utils.errors import ParameterError
from moebiusql.utils.numeric import fsum_real
from moebiusql.utils.types import FloatArray, IntArray

if TYPE_CHECKING:
    from moebiusql.spectral.periodogram import Periodogram

logger = logging.getLogger(__name__)

MAX_DENOMINATOR = 2**31 - 1
DEFAULT_ATOM_BUDGET = 2**22
PositionLike = Union[Fraction, int, tuple[int, int]]


def _position_keys(numerators: IntArray, denominators: IntArray) -> IntArray:
    "packs reduced (num, den) pairs into one int64 key"
    return (denominators << 31) | numerators

def _position_from_keys(keys: IntArray) -> tuple[IntArray, IntArray]:
    return keys & MAX_DENOMINATOR, keys >> 31

def _as_fraction(position: PositionLike) -> Fraction:
    if isinstance(position, tuple):
        position = Fraction(*position)
    position = Fraction(position) % 1
    if position.denominator > MAX_DENOMINATOR:
        raise ParameterError(f"atom denominator {position.denominator} exceeds {MAX_DENOMINATOR}")
    return position


@dataclass(frozen=True)
class DiracComb:
    q: int
    "the comb carries one atom at each j/q, 0 <= j < q"

    weight: float
    "weight of every atom of the comb"

    def __post_init__(self):
        assert self.q >= 1, "comb period must be positive"
        assert self.weight >= 0, "comb weight must be nonnegative"

    @property
    def mass(self) -> float:
        return self.q * self.weight


@dataclass(frozen=True, eq=False)
class CircleMeasure:
    """Finite positive measure on the circle, positions measured in turns.

    Atoms sit at exact reduced fractions num/den in [0, 1). Dirac combs are
    kept in closed form until an operation needs them as atoms. The optional
    absolutely continuous part is a density on the uniform grid 2 pi i / M,
    integrated with the trapezoid rule.
    """

    numerators: IntArray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    "reduced numerators of the atom positions"

    denominators: IntArray = field(default_factory=lambda: np.ones(0, dtype=np.int64))
    "denominators of the atom positions"

    weights: FloatArray = field(default_factory=lambda: np.zeros(0, dtype=np.float64))
    "atom weights"

    combs: tuple[DiracComb, ...] = ()
    "uniform atom families in closed form"

    ac_density: Optional[FloatArray] = None
    "density of the absolutely continuous part on the uniform grid"

    def __post_init__(self):
        assert len(self.numerators) == len(self.denominators) == len(self.weights), "atom arrays differ in length"
        assert np.all(self.weights >= 0), "atom weights must be nonnegative"
        assert np.all((0 <= self.numerators) & (self.numerators < self.denominators)), "atom positions must lie in [0, 1)"
        assert np.all(np.gcd(self.numerators, self.denominators) == 1), "atom positions must be reduced"
        assert len(np.unique(_position_keys(self.numerators, self.denominators))) == len(self.numerators), "atom positions must be distinct"
        assert self.ac_density is None or np.all(self.ac_density >= 0), "density must be nonnegative"

    @staticmethod
    def from_atoms(
        atoms: Iterable[tuple[PositionLike, float]] = (),
        ac_density: Optional[FloatArray] = None,
        combs: Iterable[DiracComb] = (),
    ) -> "CircleMeasure":
        "builds a measure from (position, weight) pairs, merging coinciding positions"
        merged: dict[Fraction, float] = {}
        for position, weight in atoms:
            if weight < 0:
                raise ParameterError(f"negative atom weight {weight}")
            key = _as_fraction(position)
            merged[key] = merged.get(key, 0.0) + float(weight)
        ordered = sorted(merged.items())
        return CircleMeasure(
            np.array([p.numerator for p, _ in ordered], dtype=np.int64),
            np.array([p.denominator for p, _ in ordered], dtype=np.int64),
            np.array([w for _, w in ordered], dtype=np.float64),
            tuple(combs),
            None if ac_density is None else np.asarray(ac_density, dtype=np.float64),
        )

    @staticmethod
    def dirac(position: PositionLike = 0, weight: float = 1.0) -> "CircleMeasure":
        return CircleMeasure.from_atoms([(position, weight)])

    @staticmethod
    def lebesgue(grid_size: int, mass: float = 1.0) -> "CircleMeasure":
        return CircleMeasure(ac_density=np.full(grid_size, float(mass)))

    @staticmethod
    def from_periodogram(pgram: "Periodogram") -> "CircleMeasure":
        return CircleMeasure(ac_density=np.asarray(pgram.density, dtype=np.float64))

    @property
    def grid_size(self) -> Optional[int]:
        return None if self.ac_density is None else len(self.ac_density)

    @property
    def atom_mass(self) -> float:
        return math.fsum([*self.weights.tolist(), *(comb.mass for comb in self.combs)])

    @property
    def ac_mass(self) -> float:
        if self.ac_density is None:
            return 0.0
        return fsum_real(self.ac_density) / len(self.ac_density)

    @property
    def total_mass(self) -> float:
        return self.atom_mass + self.ac_mass

    @property
    def atom_count(self) -> int:
        return len(self.weights) + sum(comb.q for comb in self.combs)

    def scaled(self, factor: float) -> "CircleMeasure":
        return CircleMeasure(
            self.numerators,
            self.denominators,
            self.weights * factor,
            tuple(DiracComb(comb.q, comb.weight * factor) for comb in self.combs),
            None if self.ac_density is None else self.ac_density * factor,
        )

    def normalized(self) -> "CircleMeasure":
        mass = self.total_mass
        if not mass > 0:
            raise ParameterError("measure has zero mass and cannot be normalised")
        return self.scaled(1 / mass)

    def materialized(self, atom_budget: int = DEFAULT_ATOM_BUDGET) -> "CircleMeasure":
        "expands every comb into atoms and merges coinciding reduced positions"
        if not self.combs:
            return self
        if self.atom_count > atom_budget:
            raise ParameterError(f"materialising {self.atom_count} atoms exceeds the atom budget {atom_budget}")
        numerators, denominators, weights = [self.numerators], [self.denominators], [self.weights]
        for comb in self.combs:
            j = np.arange(comb.q, dtype=np.int64)
            divisor = np.gcd(j, comb.q)
            numerators.append(j // divisor)
            denominators.append(comb.q // divisor)
            weights.append(np.full(comb.q, comb.weight))
        keys = _position_keys(np.concatenate(numerators), np.concatenate(denominators))
        unique_keys, inverse = np.unique(keys, return_inverse=True)
        merged = np.bincount(inverse, weights=np.concatenate(weights), minlength=len(unique_keys))
        unique_numerators, unique_denominators = _position_from_keys(unique_keys)
        logger.debug("materialised %d atoms into %d positions", len(keys), len(unique_keys))
        return CircleMeasure(unique_numerators, unique_denominators, merged, (), self.ac_density)

    def on_grid(self, grid_size: int) -> Optional[FloatArray]:
        "the density resampled to grid_size points by periodic linear interpolation"
        if self.ac_density is None:
            return None
        if grid_size == len(self.ac_density):
            return self.ac_density
        source = 2 * np.pi * np.arange(len(self.ac_density)) / len(self.ac_density)
        target = 2 * np.pi * np.arange(grid_size) / grid_size
        return np.interp(target, source, self.ac_density, period=2 * np.pi)

    def resampled(self, grid_size: int) -> "CircleMeasure":
        "the same measure with its density carried on grid_size points"
        if self.ac_density is None or grid_size == len(self.ac_density):
            return self
        return CircleMeasure(self.numerators, self.denominators, self.weights, self.combs, self.on_grid(grid_size))

    def rotated(self, angle: PositionLike) -> "CircleMeasure":
        "the image under x -> x + angle (in turns); grids only rotate by whole grid steps"
        angle = _as_fraction(angle)
        measure = self.materialized()
        total_denominators = measure.denominators * angle.denominator
        total_numerators = measure.numerators * angle.denominator + angle.numerator * measure.denominators
        total_numerators %= total_denominators
        divisor = np.gcd(total_numerators, total_denominators)
        numerators, denominators = total_numerators // divisor, total_denominators // divisor
        if np.any(denominators > MAX_DENOMINATOR):
            raise ParameterError("rotated atom positions exceed the denominator limit")
        order = np.argsort(_position_keys(numerators, denominators))

        density = measure.ac_density
        if density is not None:
            steps = angle * len(density)
            if steps.denominator != 1:
                raise ParameterError(f"rotation by {angle} is not a whole number of steps on a grid of {len(density)}")
            density = np.roll(density, int(steps))
        return CircleMeasure(numerators[order], denominators[order], measure.weights[order], (), density)

    def fourier_coefficient(self, k: int) -> complex:
        "int e^{-2 pi i k x} d(measure), x in turns"
        residues = np.mod(np.mod(k, self.denominators) * self.numerators, self.denominators)
        phases = np.exp(-2j * np.pi * residues / self.denominators)
        atoms = self.weights * phases
        value = complex(math.fsum(atoms.real.tolist()), math.fsum(atoms.imag.tolist()))
        value += math.fsum(comb.mass for comb in self.combs if k % comb.q == 0)
        if self.ac_density is not None:
            theta = 2 * np.pi * np.arange(len(self.ac_density)) / len(self.ac_density)
            value += complex(np.mean(self.ac_density * np.exp(-1j * k * theta)))
        return value

    def to_dict(self) -> dict:
        return {
            "atoms": [
                {"num": int(num), "den": int(den), "weight": float(weight)}
                for num, den, weight in zip(self.numerators, self.denominators, self.weights)
            ],
            "combs": [{"q": comb.q, "weight": comb.weight} for comb in self.combs],
            "ac": None if self.ac_density is None else {
                "grid_size": len(self.ac_density),
                "values": self.ac_density.tolist(),
            },
            "mass": self.total_mass,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def from_dict(data: dict) -> "CircleMeasure":
        ac = data.get("ac")
        density = None
        if ac is not None:
            density = np.asarray(ac["values"], dtype=np.float64)
            if len(density) != ac["grid_size"]:
                raise ParameterError("ac grid_size does not match the number of values")
        measure = CircleMeasure.from_atoms(
            ((Fraction(atom["num"], atom["den"]), atom["weight"]) for atom in data.get("atoms", [])),
            density,
            (DiracComb(int(comb["q"]), float(comb["weight"])) for comb in data.get("combs", [])),
        )
        if "mass" in data:
            assert math.isclose(measure.total_mass, data["mass"], rel_tol=1e-9, abs_tol=1e-12), "stored mass does not match the measure"
        return measure

    @staticmethod
    def from_json(text: str) -> "CircleMeasure":
        return CircleMeasure.from_dict(json.loads(text))

    def __repr__(self):
        return (
            f"<CircleMeasure atoms={len(self.weights)} combs={len(self.combs)} "
            f"grid={self.grid_size} mass={self.total_mass:.6g}>"
        )
