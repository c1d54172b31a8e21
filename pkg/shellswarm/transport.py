"""
Wasserstein distances d_p between uniform discrete measures with the same
number of atoms, where optimal couplings are permutations
"""

from collections import namedtuple
import math
import logging

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching
from scipy.spatial.distance import cdist
from scipy.stats import special_ortho_group

from shellswarm.errors import DomainError, UnsupportedInputError
from shellswarm.equilibria import minimizer_kind, shell_proxy, simplex_measure
from shellswarm.special import shell_radius_closed_form


logger = logging.getLogger('<transport>')

MAX_ATOMS = 2048
PROXY_ATOMS = 256
ROTATION_SAMPLES = 64

Coupling = namedtuple('Coupling', ['permutation', 'p', 'cost'])


def _check_pair(a, b):
    if a.dim != b.dim:
        raise UnsupportedInputError(f'measures live in dimensions {a.dim} and {b.dim}')
    if len(a) != len(b):
        logger.critical(f'Cannot couple {len(a)} atoms with {len(b)} atoms by a permutation')
        raise UnsupportedInputError('measures must have the same number of atoms')
    if len(a) > MAX_ATOMS:
        raise UnsupportedInputError(f'{len(a)} atoms exceed the limit of {MAX_ATOMS}')
    if not (a.is_uniform() and b.is_uniform()):
        raise UnsupportedInputError('only uniform weights are supported')


def _matched_cost(a_points, b_points, permutation, p):
    """
    Mean of |a_i - b_perm(i)|^p accumulated in the index order of a
    """
    gaps = np.linalg.norm(a_points - b_points[permutation], axis=1)
    return float(np.mean(gaps**p))


def optimal_coupling(a, b, p=2, method='auto'):
    """
    Permutation minimizing the mean p-th power of matched distances

    Args:
        a (DiscreteMeasure): uniform measure
        b (DiscreteMeasure): uniform measure with as many atoms as `a`
        p (float): cost exponent, p >= 1
        method (str): 'sort' (1D only), 'assignment' or 'auto'
    Returns:
        Coupling: permutation[i] is the atom of b matched with atom i of a
    """

    _check_pair(a, b)

    if p < 1:
        raise DomainError(f'd_p needs p >= 1, got {p}')
    if method == 'auto':
        method = 'sort' if a.dim == 1 else 'assignment'

    if method == 'sort':
        if a.dim != 1:
            raise UnsupportedInputError('sorting gives optimal couplings in 1D only')
        permutation = np.empty(len(a), dtype=int)
        permutation[np.argsort(a.points[:, 0], kind='stable')] = np.argsort(b.points[:, 0], kind='stable')
    elif method == 'assignment':
        (_, permutation) = linear_sum_assignment(cdist(a.points, b.points)**p)
    else:
        raise DomainError(f'unknown coupling method {method}')

    return Coupling(permutation, p, _matched_cost(a.points, b.points, permutation, p))


def wasserstein_p(a, b, p=2, method='auto'):
    """
    d_p(a, b) = (min over permutations of mean |a_i - b_perm(i)|^p)^(1/p)

    Args:
        a (DiscreteMeasure): uniform measure
        b (DiscreteMeasure): uniform measure, same size and dimension
        p (float): exponent in [1, inf]
        method (str): see optimal_coupling
    Returns:
        float
    """
    if math.isinf(p):
        return wasserstein_inf(a, b)
    return optimal_coupling(a, b, p=p, method=method).cost**(1/p)


def _perfect_matching(mask):
    matching = maximum_bipartite_matching(csr_matrix(mask), perm_type='column')
    return bool(np.all(matching >= 0))


def wasserstein_inf(a, b):
    """
    Bottleneck distance: smallest t such that a permutation matches every atom
    within distance t. Binary search over the distinct pairwise distances with
    a maximum bipartite matching as feasibility test.

    Args:
        a (DiscreteMeasure): uniform measure
        b (DiscreteMeasure): uniform measure, same size and dimension
    Returns:
        float
    """

    _check_pair(a, b)

    dist = cdist(a.points, b.points)
    lower = max(dist.min(axis=1).max(), dist.min(axis=0).max())

    candidates = np.unique(dist[dist >= lower])

    (low, high) = (0, candidates.size - 1)
    while low < high:
        middle = (low + high) // 2
        if _perfect_matching(dist <= candidates[middle]):
            high = middle
        else:
            low = middle + 1

    return float(candidates[low])


def _replication_factor(n_atoms, need_even):
    """
    Smallest r with n_atoms * r >= PROXY_ATOMS, capped at MAX_ATOMS atoms in total
    """
    factor = min(math.ceil(PROXY_ATOMS / n_atoms), MAX_ATOMS // n_atoms)

    if need_even and (n_atoms * factor) % 2:
        if n_atoms * (factor+1) <= MAX_ATOMS:
            factor += 1
        elif factor > 1:
            factor -= 1
        else:
            factor = 0

    if factor < 1:
        raise UnsupportedInputError(f'no shell proxy of admissible size for {n_atoms} atoms')

    return factor


def distance_to_minimizer(measure, kernel, p=2, rotations=ROTATION_SAMPLES, seed=0):
    """
    d_p distance from a measure to the family of energy minimizers, modulo
    translations. The measure is centered first. The shell minimizer is
    replaced by a quasi-uniform proxy with a multiple of the measure's atoms;
    the simplex family is sampled on `rotations` random rotations.

    Args:
        measure (DiscreteMeasure): uniform measure
        kernel (Kernel)
        p (float): exponent in [1, inf]
        rotations (int): rotation samples for the simplex family
        seed (int): seed of the rotation samples
    Returns:
        float
    """

    kind = minimizer_kind(kernel.params)
    centered = measure.centered()
    n_atoms, dim = len(measure), measure.dim

    if not centered.is_uniform():
        raise UnsupportedInputError('only uniform weights are supported')

    if kind == 'shell':
        factor = _replication_factor(n_atoms, need_even=dim != 2)
        radius = shell_radius_closed_form(kernel.params)
        proxy = shell_proxy(radius, dim, n_atoms*factor)
        return wasserstein_p(centered.replicated(factor), proxy, p=p)

    count = n_atoms * (dim+1) // math.gcd(n_atoms, dim+1)
    if count > MAX_ATOMS:
        raise UnsupportedInputError(f'{count} atoms needed to compare with the simplex family')

    query = centered.replicated(count // n_atoms)
    simplex = simplex_measure(dim)
    matrices = [np.eye(dim)] + list(special_ortho_group(dim=dim, seed=seed).rvs(rotations).reshape(-1, dim, dim))

    return min(wasserstein_p(query, simplex.transformed(matrix).replicated(count // (dim+1)), p=p)
               for matrix in matrices)
