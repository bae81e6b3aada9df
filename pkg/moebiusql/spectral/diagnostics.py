import logging
from typing import NamedTuple, Optional
import numpy as np
import scipy.fft
from moebiusql.arith.sieve import SieveTable
from moebiusql.spectral.periodogram import periodogram
from moebiusql.utils.errors import DegenerateError, ParameterError, RangeError
from moebiusql.utils.numeric import is_power_of_two, next_power_of_two

logger = logging.getLogger(__name__)


class Flatness(NamedTuple):
    l1_over_l2: float
    "(1/2 pi) int |P_n| dx divided by ||P_n||_2"
    flatness_integral: float
    "(1/2 pi) int | |P_n|^2 / ||P_n||_2^2 - 1 | dx"
    norm_squared: float
    "||P_n||_2^2, the squarefree density of 1..n"

    @property
    def decorrelation_bound(self) -> float:
        "bound on |sigma_n(k)| for every k != 0 implied by the flatness integral"
        return self.norm_squared * self.flatness_integral


def _check_grid(grid_size: int, minimum: int):
    if not is_power_of_two(grid_size):
        raise ParameterError(f"grid size must be a power of two, got {grid_size}")
    if grid_size < minimum:
        raise ParameterError(f"grid size {grid_size} is below the required {minimum}")

def flatness(table: SieveTable, n: int, grid_size: Optional[int] = None, workers: Optional[int] = None) -> Flatness:
    "L1/L2 ratio and flatness integral of the normalised polynomial with coefficients mu(1..n)"
    if not 1 <= n <= table.n_max:
        raise RangeError(f"n={n} outside 1..{table.n_max}")
    grid_size = next_power_of_two(8 * n) if grid_size is None else grid_size
    _check_grid(grid_size, 8 * n)

    density = periodogram(table.mu_slice(1, n + 1), grid_size, workers).density
    norm_squared = float(np.mean(density))
    # mu(1) = 1 keeps the norm away from zero
    if not norm_squared > 0:
        raise DegenerateError(f"polynomial of length {n} has zero L2 norm")
    l1 = float(np.mean(np.sqrt(density)))
    flat = float(np.mean(np.abs(density / norm_squared - 1)))
    return Flatness(l1 / np.sqrt(norm_squared), flat, norm_squared)

def davenport_sup(table: SieveTable, x: int, grid_size: Optional[int] = None, workers: Optional[int] = None) -> float:
    "max over the grid of |sum_{k <= x} mu(k) e^{ik theta}| / x"
    if not 1 <= x <= table.n_max:
        raise RangeError(f"x={x} outside 1..{table.n_max}")
    grid_size = next_power_of_two(4 * x) if grid_size is None else grid_size
    _check_grid(grid_size, 4 * x)
    polynomial = scipy.fft.ifft(table.mu_slice(1, x + 1).astype(np.float64), grid_size, workers=workers) * grid_size
    return float(np.abs(polynomial).max()) / x
