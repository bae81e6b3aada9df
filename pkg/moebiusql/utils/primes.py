import math
from functools import lru_cache
import numpy as np
from moebiusql.utils.types import IntArray


@lru_cache(maxsize=8)
def _primes_upto(limit: int) -> IntArray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p*p::p] = False
    primes = np.flatnonzero(is_prime).astype(np.int64)
    primes.setflags(write=False)
    return primes

def primes_upto(limit: int) -> IntArray:
    "all primes p <= limit as a read-only int64 array"
    return _primes_upto(int(limit))
