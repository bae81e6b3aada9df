import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence, Union
import numpy as np
from moebiusql.utils.counter import RANDOM_SHIFT_STREAM, counter_signs
from moebiusql.utils.errors import ParameterError
from moebiusql.utils.types import ComplexArray, IntArray

GeneratorKind = Literal["rotation", "quadratic_weyl", "thue_morse", "q_multiplicative", "random_shift", "constant"]
ParameterLike = Union[Fraction, float, int, str]

MAX_DENOMINATOR = 2**31 - 1
DEFAULT_PHASE_BINS = 64

NAMED_IRRATIONALS: dict[str, float] = {
    "golden": (math.sqrt(5) - 1) / 2,
    "sqrt2": math.sqrt(2) - 1,
    "sqrt3": math.sqrt(3) - 1,
    "e": math.e - 2,
}
"fractional parts of common irrationals, addressable by name"

ZERO_ENTROPY_KINDS: tuple[GeneratorKind, ...] = ("rotation", "quadratic_weyl", "thue_morse", "q_multiplicative", "constant")


def rational_approximation(x: ParameterLike, max_denominator: int = MAX_DENOMINATOR) -> Fraction:
    "best rational approximation of x with denominator <= max_denominator"
    if isinstance(x, str):
        x = NAMED_IRRATIONALS[x] if x in NAMED_IRRATIONALS else Fraction(x)
    return Fraction(x).limit_denominator(max_denominator)

def _parity(values: IntArray) -> IntArray:
    "parity of the binary digit sum"
    folded = values.astype(np.uint64)
    for shift in (32, 16, 8, 4, 2, 1):
        folded ^= folded >> np.uint64(shift)
    return (folded & np.uint64(1)).astype(np.int64)


@dataclass(frozen=True)
class SequenceGenerator:
    """Deterministic sequence g_n = f(T^n x) of a small dynamical system.

    Phases are carried as exact integers modulo the denominator of the
    rational parameter, so values and symbol codings do not drift with n.
    """

    kind: GeneratorKind
    "system the sequence is read from"

    alpha: Fraction = Fraction(0)
    "rotation number, a rational approximation in [0, 1)"

    q: int = 2
    "digit base of a q-multiplicative sequence"

    phases: tuple[Fraction, ...] = ()
    "phase in turns contributed by each digit of a q-multiplicative sequence"

    seed: int = 0
    "seed of the random shift"

    phase_bins: int = DEFAULT_PHASE_BINS
    "number of symbols used to code continuous phases"

    def __post_init__(self):
        if self.kind not in ("rotation", "quadratic_weyl", "thue_morse", "q_multiplicative", "random_shift", "constant"):
            raise ParameterError(f"unknown generator kind {self.kind!r}")
        if not 0 <= self.alpha < 1:
            raise ParameterError(f"alpha must lie in [0, 1), got {self.alpha}")
        if self.alpha.denominator > MAX_DENOMINATOR:
            raise ParameterError(f"alpha denominator exceeds {MAX_DENOMINATOR}, use rational_approximation")
        if self.phase_bins < 1:
            raise ParameterError(f"phase_bins must be positive, got {self.phase_bins}")
        if self.kind == "q_multiplicative":
            if self.q < 2 or len(self.phases) != self.q:
                raise ParameterError("q-multiplicative sequences need q >= 2 and one phase per digit")
            if self.phases[0] % 1 != 0:
                raise ParameterError("the phase of digit 0 must vanish")

    @staticmethod
    def rotation(alpha: ParameterLike) -> "SequenceGenerator":
        return SequenceGenerator("rotation", alpha=rational_approximation(alpha))

    @staticmethod
    def quadratic_weyl(alpha: ParameterLike) -> "SequenceGenerator":
        return SequenceGenerator("quadratic_weyl", alpha=rational_approximation(alpha))

    @staticmethod
    def thue_morse() -> "SequenceGenerator":
        return SequenceGenerator("thue_morse")

    @staticmethod
    def q_multiplicative(q: int, phases: Sequence[ParameterLike]) -> "SequenceGenerator":
        return SequenceGenerator(
            "q_multiplicative", q=q, phases=tuple(rational_approximation(p, 2**16) % 1 for p in phases)
        )

    @staticmethod
    def random_shift(seed: int) -> "SequenceGenerator":
        return SequenceGenerator("random_shift", seed=seed)

    @staticmethod
    def constant() -> "SequenceGenerator":
        return SequenceGenerator("constant")

    @property
    def name(self) -> str:
        if self.kind in ("rotation", "quadratic_weyl"):
            return f"{self.kind}({self.alpha})"
        if self.kind == "q_multiplicative":
            return f"{self.kind}({self.q}; {', '.join(str(p) for p in self.phases)})"
        if self.kind == "random_shift":
            return f"{self.kind}({self.seed})"
        return self.kind

    @property
    def is_zero_entropy(self) -> bool:
        return self.kind in ZERO_ENTROPY_KINDS

    @property
    def sup_norm(self) -> float:
        return 1.0

    @property
    def _phase_modulus(self) -> int:
        if self.kind == "q_multiplicative":
            return math.lcm(*(p.denominator for p in self.phases))
        return self.alpha.denominator

    def _phase_numerators(self, n: int, start: int) -> IntArray:
        "phase of g_j as an integer numerator over _phase_modulus"
        j = np.arange(start, start + n, dtype=np.int64)
        modulus = self._phase_modulus
        if self.kind == "rotation":
            return (j % modulus) * self.alpha.numerator % modulus
        if self.kind == "quadratic_weyl":
            residues = j % modulus
            return (residues * residues % modulus) * self.alpha.numerator % modulus
        assert self.kind == "q_multiplicative", f"{self.kind} has no phase"
        digit_phases = np.array([int(p * modulus) for p in self.phases], dtype=np.int64)
        accumulated = np.zeros(n, dtype=np.int64)
        remaining = j.copy()
        while np.any(remaining):
            accumulated = (accumulated + digit_phases[remaining % self.q]) % modulus
            remaining //= self.q
        return accumulated

    def generate(self, n: int, start: int = 0) -> ComplexArray:
        "g_start .. g_{start+n-1}"
        if n < 1 or start < 0:
            raise ParameterError(f"need n >= 1 and start >= 0, got n={n}, start={start}")
        if self.kind == "constant":
            return np.ones(n, dtype=np.complex128)
        if self.kind == "thue_morse":
            return (1 - 2 * _parity(np.arange(start, start + n, dtype=np.int64))).astype(np.complex128)
        if self.kind == "random_shift":
            return counter_signs(self.seed, start, start + n, RANDOM_SHIFT_STREAM).astype(np.complex128)
        turns = self._phase_numerators(n, start) / self._phase_modulus
        return np.exp(2j * np.pi * turns)

    def alphabet_size(self, phase_bins: Optional[int] = None) -> int:
        if self.kind == "constant":
            return 1
        if self.kind in ("thue_morse", "random_shift"):
            return 2
        if self.kind == "q_multiplicative":
            return self._phase_modulus
        return phase_bins or self.phase_bins

    def symbols(self, n: int, phase_bins: Optional[int] = None, start: int = 0) -> IntArray:
        """Exact symbolic coding of g_start .. g_{start+n-1}.

        Continuous phases fall into phase_bins equal arcs; power-of-two bin
        counts give nested codings.
        """
        if n < 1:
            raise ParameterError(f"need n >= 1, got {n}")
        if self.kind == "constant":
            return np.zeros(n, dtype=np.int64)
        if self.kind == "thue_morse":
            return _parity(np.arange(start, start + n, dtype=np.int64))
        if self.kind == "random_shift":
            return (counter_signs(self.seed, start, start + n, RANDOM_SHIFT_STREAM) < 0).astype(np.int64)
        numerators = self._phase_numerators(n, start)
        if self.kind == "q_multiplicative":
            return numerators
        bins = phase_bins or self.phase_bins
        return numerators * bins // self._phase_modulus

    @staticmethod
    def parse(text: str) -> "SequenceGenerator":
        """Builds a generator from a short spec.

        `thue_morse`, `constant`, `rotation:golden`, `rotation:0.3`,
        `quadratic_weyl:sqrt2`, `random_shift:7`, `q_multiplicative:3:0,1/3,2/3`.
        """
        kind, _, rest = text.strip().partition(":")
        try:
            if kind in ("thue_morse", "constant") and not rest:
                return getattr(SequenceGenerator, kind)()
            if kind in ("rotation", "quadratic_weyl") and rest:
                return getattr(SequenceGenerator, kind)(rest)
            if kind == "random_shift":
                return SequenceGenerator.random_shift(int(rest or 0))
            if kind == "q_multiplicative":
                q, _, phases = rest.partition(":")
                return SequenceGenerator.q_multiplicative(int(q), phases.split(","))
        except (ValueError, ZeroDivisionError) as error:
            raise ParameterError(f"invalid generator spec {text!r}: {error}") from error
        raise ParameterError(f"invalid generator spec {text!r}")
