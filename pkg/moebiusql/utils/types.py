from typing import Union
import numpy as np
import numpy.typing as npt

FloatArray = npt.NDArray[np.float64]
ComplexArray = npt.NDArray[np.complex128]
IntArray = npt.NDArray[np.int64]
SequenceLike = Union[npt.ArrayLike, ComplexArray, FloatArray]


def as_complex_array(g: SequenceLike) -> ComplexArray:
    "converts any 1D sequence into a contiguous complex128 array"
    arr = np.ascontiguousarray(np.asarray(g), dtype=np.complex128)
    assert arr.ndim == 1, "sequences must be one dimensional"
    return arr
