"""
Kernel values and gradients, interaction energy and the potential V = W * mu
generated by a discrete measure
"""

import math
import logging
from itertools import chain

import numpy as np

from shellswarm.errors import SingularityError


logger = logging.getLogger('<potentials>')

# Number of evaluation points processed at once in field computations
BLOCK_SIZE = 256


def _as_point_array(x, dim):
    """
    Return (points (M, dim), single) where single tells if one point was given
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or (x.ndim == 1 and dim > 1) or (x.ndim == 1 and x.size == 1):
        return x.reshape(1, dim), True
    if x.ndim == 1:
        return x.reshape(-1, 1), False
    return x, False


def kernel_value(kernel, x):
    """
    W(x) = |x|^alpha/alpha - |x|^beta/beta

    Args:
        kernel (Kernel)
        x (np.array): displacement
    Returns:
        float
    """
    return float(kernel.radial_value(np.linalg.norm(np.atleast_1d(x))))


def kernel_gradient(kernel, x):
    """
    grad W(x) = (|x|^(alpha-2) - |x|^(beta-2)) x, zero at the origin when beta >= 2

    Args:
        kernel (Kernel)
        x (np.array): displacement
    Returns:
        np.array
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return kernel.radial_factor(np.linalg.norm(x)) * x


def _pair_energy_terms(kernel, measure):
    points, weights = measure.points, measure.weights

    for i in range(len(measure)-1):
        dist = np.linalg.norm(points[i+1:] - points[i], axis=1)
        yield weights[i] * weights[i+1:] * kernel.radial_value(dist)


def interaction_energy(kernel, measure):
    """
    E = 1/2 sum_ij w_i w_j W(x_i - x_j), accumulated with correctly rounded
    summation over the pairs i < j

    Args:
        kernel (Kernel)
        measure (DiscreteMeasure)
    Returns:
        float
    """
    if len(measure) == 1:
        return 0.0
    return math.fsum(chain.from_iterable(_pair_energy_terms(kernel, measure)))


def _blocks(n_items):
    for start in range(0, n_items, BLOCK_SIZE):
        yield slice(start, min(n_items, start+BLOCK_SIZE))


def potential_field(kernel, measure, x):
    """
    V(x) = sum_j w_j W(x - x_j)

    Args:
        kernel (Kernel)
        measure (DiscreteMeasure)
        x (np.array): one point (dim,) or many points (M, dim)
    Returns:
        float or np.array of shape (M,)
    """

    targets, single = _as_point_array(x, measure.dim)
    values = np.empty(len(targets))

    for block in _blocks(len(targets)):
        diffs = targets[block, None, :] - measure.points[None, :, :]
        kernel_values = kernel.radial_value(np.linalg.norm(diffs, axis=2))
        values[block] = np.sum(kernel_values * measure.weights, axis=1)

    if single:
        return float(values[0])
    return values


def field_gradient(kernel, measure, x):
    """
    grad V(x) = sum_j w_j grad W(x - x_j)

    Args:
        kernel (Kernel)
        measure (DiscreteMeasure)
        x (np.array): one point (dim,) or many points (M, dim)
    Returns:
        np.array of shape (dim,) or (M, dim)
    """

    targets, single = _as_point_array(x, measure.dim)
    gradients = np.empty_like(targets)

    for block in _blocks(len(targets)):
        diffs = targets[block, None, :] - measure.points[None, :, :]
        factor = kernel.radial_factor(np.linalg.norm(diffs, axis=2)) * measure.weights
        gradients[block] = np.sum(factor[:, :, None] * diffs, axis=1)

    if single:
        return gradients[0]
    return gradients


def particle_velocities(kernel, measure):
    """
    Velocity field of the particle flow, v_i = -sum_{j != i} w_j grad W(x_i - x_j).
    The self-interaction is excluded, so no singularity arises from the diagonal.

    Args:
        kernel (Kernel)
        measure (DiscreteMeasure)
    Returns:
        np.array: (N, dim) velocities
    """

    points = measure.points
    diffs = points[:, None, :] - points[None, :, :]
    dist = np.linalg.norm(diffs, axis=2)

    diagonal = np.eye(len(points), dtype=bool)
    if not kernel.smooth_at_zero() and np.any((dist == 0) & ~diagonal):
        logger.critical('Two particles collided with a singular repulsion (beta < 2)')
        raise SingularityError('coincident particles')

    factor = kernel.radial_factor(np.where(diagonal, 1.0, dist))
    factor[diagonal] = 0

    return -np.sum((factor * measure.weights)[:, :, None] * diffs, axis=1)


def force_residual(kernel, measure):
    """
    Largest particle speed max_i |grad V(x_i)|
    """
    return float(np.linalg.norm(particle_velocities(kernel, measure), axis=1).max())
