import logging
import math
import numpy as np
from moebiusql.measures.circle import CircleMeasure, DiracComb
from moebiusql.utils.errors import ParameterError
from moebiusql.utils.primes import primes_upto

logger = logging.getLogger(__name__)

DEFAULT_PRIME_CUTOFF = 10**6


def _check_cutoff(prime_cutoff: int):
    if prime_cutoff < 2:
        raise ParameterError(f"prime cutoff must be at least 2, got {prime_cutoff}")

def mirsky_coefficient(k: int, prime_cutoff: int = DEFAULT_PRIME_CUTOFF) -> float:
    """Limit of (1/N) sum mu^2(n) mu^2(n+k), truncated to the primes p <= prime_cutoff.

    prod_{p}(1 - 2/p^2) * prod_{p^2 | k}(1 + 1/(p^2 - 2)); every prime square
    divides k = 0, which gives prod_{p}(1 - 1/p^2).
    """
    _check_cutoff(prime_cutoff)
    if k < 0:
        k = -k
    primes = primes_upto(prime_cutoff).astype(np.float64)
    squares = primes * primes
    logs = [np.log1p(-2 / squares)]
    if k == 0:
        logs.append(np.log1p(1 / (squares - 2)))
    else:
        dividing = [p for p in primes_upto(min(prime_cutoff, math.isqrt(k))).tolist() if k % (p * p) == 0]
        if dividing:
            dividing_squares = np.array(dividing, dtype=np.float64) ** 2
            logs.append(np.log1p(1 / (dividing_squares - 2)))
    return math.exp(math.fsum(np.concatenate(logs).tolist()))

def mirsky_truncation_bound(prime_cutoff: int = DEFAULT_PRIME_CUTOFF) -> float:
    "bound 2/(P log P) on the relative tail of the Euler products beyond P"
    _check_cutoff(prime_cutoff)
    return 2 / (prime_cutoff * math.log(prime_cutoff))


def mu_squared_spectrum(d_max: int, prime_cutoff: int = DEFAULT_PRIME_CUTOFF) -> CircleMeasure:
    """Spectral measure of mu^2, truncated to squarefree P-smooth d <= d_max.

    Each d carries the comb {j/d^2} with weight C d^-2 prod_{p | d} 1/(p^2 - 2),
    C = prod_{p <= P}(1 - 2/p^2); d = 1 is the atom at 0.
    """
    if d_max < 1:
        raise ParameterError(f"d_max must be positive, got {d_max}")
    _check_cutoff(prime_cutoff)
    constant = mirsky_coefficient(1, prime_cutoff)

    factors = np.ones(d_max + 1, dtype=np.float64)
    admissible = np.ones(d_max + 1, dtype=bool)
    admissible[0] = False
    for p in primes_upto(d_max).tolist():
        if p > prime_cutoff:
            admissible[p::p] = False
            continue
        factors[p::p] /= p * p - 2
        admissible[p * p::p * p] = False

    combs = tuple(
        DiracComb(d * d, constant * factors[d] / (d * d))
        for d in np.flatnonzero(admissible).tolist()
    )
    logger.debug("mu^2 spectrum with %d combs, d_max=%d, P=%d", len(combs), d_max, prime_cutoff)
    return CircleMeasure(combs=combs)
