import numba as nb
import numpy as np
import numpy.typing as npt

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
MIX_2 = np.uint64(0x94D049BB133111EB)

MU_RAND_STREAM = 0
RANDOM_SHIFT_STREAM = 1


@nb.njit(nogil=True, cache=True)
def splitmix64(x):
    z = x + GOLDEN_GAMMA
    z = (z ^ (z >> np.uint64(30))) * MIX_1
    z = (z ^ (z >> np.uint64(27))) * MIX_2
    return z ^ (z >> np.uint64(31))


@nb.njit(nogil=True, parallel=True, cache=True)
def _fill_signs(key, n_lo, out):
    for i in nb.prange(out.shape[0]):
        n = np.uint64(n_lo + i)
        value = splitmix64(splitmix64(n ^ key) + key)
        out[i] = 1 - 2 * np.int8(value >> np.uint64(63))


def stream_key(seed: int, stream: int = MU_RAND_STREAM) -> np.uint64:
    "64-bit key of the counter stream selected by (seed, stream)"
    return np.uint64(int(splitmix64(np.uint64(seed & MASK64))) ^ int(splitmix64(np.uint64(stream & MASK64))))

def counter_signs(seed: int, n_lo: int, n_hi: int, stream: int = MU_RAND_STREAM) -> npt.NDArray[np.int8]:
    """Fair +-1 signs for the counters n_lo <= n < n_hi.

    The sign at n is a pure function of (seed, stream, n), so any range can be
    drawn without generating its prefix and the result is independent of the
    thread count.
    """
    assert 0 <= n_lo <= n_hi, "counter range must be nonnegative and ordered"
    out = np.empty(n_hi - n_lo, dtype=np.int8)
    if len(out):
        _fill_signs(stream_key(seed, stream), np.int64(n_lo), out)
    return out
