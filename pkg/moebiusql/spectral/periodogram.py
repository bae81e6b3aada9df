from dataclasses import dataclass
from typing import Optional
import numpy as np
import scipy.fft
from moebiusql.utils.errors import ParameterError
from moebiusql.utils.numeric import is_power_of_two
from moebiusql.utils.types import FloatArray, SequenceLike, as_complex_array


@dataclass(frozen=True, eq=False)
class Periodogram:
    n: int
    "length of the sequence"

    grid_size: int
    "number of uniform grid points on the circle"

    density: FloatArray
    "density[i] = |(1/sqrt n) sum_j g_j e^{i j x_i}|^2 at x_i = 2 pi i / grid_size"

    def __post_init__(self):
        assert len(self.density) == self.grid_size, "density must cover the grid"

    @property
    def theta(self) -> FloatArray:
        return 2 * np.pi * np.arange(self.grid_size) / self.grid_size

    @property
    def mass(self) -> float:
        "trapezoid value of (1/2 pi) int rho dx; equals (1/n) sum |g_j|^2"
        return float(np.mean(self.density))


def periodogram(g: SequenceLike, grid_size: int, workers: Optional[int] = None) -> Periodogram:
    g = as_complex_array(g)
    n = len(g)
    if n < 1:
        raise ParameterError("periodogram needs at least one sample")
    if not is_power_of_two(grid_size):
        raise ParameterError(f"grid size must be a power of two, got {grid_size}")
    if grid_size < n:
        raise ParameterError(f"grid size {grid_size} is smaller than the sequence length {n}")
    # ifft carries e^{+i j x}; scale back from its 1/M normalisation
    polynomial = scipy.fft.ifft(g, grid_size, workers=workers) * grid_size
    density = (polynomial.real**2 + polynomial.imag**2) / n
    return Periodogram(n, grid_size, density)

def periodogram_coefficient(pgram: Periodogram, k: int) -> complex:
    "(1/2 pi) int e^{-ikx} rho(x) dx on the grid, exact for grid_size >= 2n"
    phases = np.exp(-1j * k * pgram.theta)
    return complex(np.mean(pgram.density * phases))
