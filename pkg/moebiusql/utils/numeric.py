import math
import numpy as np
import numpy.typing as npt


def is_power_of_two(value: int) -> bool:
    return value > 0 and (value & (value - 1)) == 0

def next_power_of_two(value: int) -> int:
    return 1 << max(0, int(value) - 1).bit_length()

def fsum_complex(values: npt.NDArray) -> complex:
    "correctly rounded sum, real and imaginary parts summed independently"
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real.tolist()), math.fsum(values.imag.tolist()))
    return complex(math.fsum(values.tolist()), 0.0)

def fsum_real(values: npt.NDArray) -> float:
    return math.fsum(np.asarray(values, dtype=np.float64).tolist())

def least_squares_slope(x: npt.ArrayLike, y: npt.ArrayLike) -> float:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    assert len(x) == len(y) and len(x) >= 2, "a slope needs at least two points"
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
