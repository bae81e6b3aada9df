import logging
import math
import numpy as np
from moebiusql.measures.circle import DEFAULT_ATOM_BUDGET, CircleMeasure, _position_keys
from moebiusql.utils.errors import ParameterError
from moebiusql.utils.numeric import fsum_real

logger = logging.getLogger(__name__)

MAX_COMMON_GRID = 2**26
AFFINITY_TOLERANCE = 1e-9


def _atomic_affinity(p: CircleMeasure, q: CircleMeasure) -> float:
    keys_p = _position_keys(p.numerators, p.denominators)
    keys_q = _position_keys(q.numerators, q.denominators)
    _, index_p, index_q = np.intersect1d(keys_p, keys_q, assume_unique=True, return_indices=True)
    return fsum_real(np.sqrt(p.weights[index_p] * q.weights[index_q]))

def _continuous_affinity(p: CircleMeasure, q: CircleMeasure) -> float:
    if p.ac_density is None or q.ac_density is None:
        return 0.0
    assert len(p.ac_density) == len(q.ac_density), "densities must share a grid"
    return fsum_real(np.sqrt(p.ac_density * q.ac_density)) / len(p.ac_density)

def common_grid(p: CircleMeasure, q: CircleMeasure) -> tuple[CircleMeasure, CircleMeasure]:
    """Both measures with their densities on the least common multiple of the two grids.

    Periodic linear interpolation onto a grid that refines the original by a
    whole factor keeps the mean of the samples, so masses are unchanged.
    """
    if p.ac_density is None or q.ac_density is None or len(p.ac_density) == len(q.ac_density):
        return p, q
    grid_size = math.lcm(len(p.ac_density), len(q.ac_density))
    if grid_size > MAX_COMMON_GRID:
        raise ParameterError(f"grids of {len(p.ac_density)} and {len(q.ac_density)} points need a common grid of {grid_size} points")
    logger.debug("resampling densities to a common grid of %d points", grid_size)
    return p.resampled(grid_size), q.resampled(grid_size)

def raw_affinity(p: CircleMeasure, q: CircleMeasure, atom_budget: int = DEFAULT_ATOM_BUDGET) -> float:
    "sum of sqrt(w_p w_q) over common atoms plus (1/2 pi) int sqrt(rho_p rho_q), without normalising"
    p, q = common_grid(p.materialized(atom_budget), q.materialized(atom_budget))
    return _atomic_affinity(p, q) + _continuous_affinity(p, q)

def affinity(p: CircleMeasure, q: CircleMeasure, atom_budget: int = DEFAULT_ATOM_BUDGET) -> float:
    """Affinity G of the normalised measures.

    Atoms only pair with atoms at the same exact position and densities only
    with densities, so mutually singular parts contribute nothing. Both
    measures are brought to a common grid before their masses are taken.
    """
    p, q = common_grid(p.materialized(atom_budget), q.materialized(atom_budget))
    value = raw_affinity(p.normalized(), q.normalized(), atom_budget)
    assert -AFFINITY_TOLERANCE <= value <= 1 + AFFINITY_TOLERANCE, f"affinity {value} outside [0, 1]"
    return value

def hellinger(p: CircleMeasure, q: CircleMeasure, atom_budget: int = DEFAULT_ATOM_BUDGET) -> float:
    return math.sqrt(max(0.0, 2 * (1 - affinity(p, q, atom_budget))))
