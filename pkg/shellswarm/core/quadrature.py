"""
Quadrature rules: tanh-sinh (double exponential) for integrands with endpoint
singularities and composite Gauss-Legendre panels for smooth oscillatory ones
"""

import logging
from functools import lru_cache

import numpy as np
from scipy.special import expit

from shellswarm.errors import QuadratureError


logger = logging.getLogger('<radial>')

# Nodes t in [-T_MAX, T_MAX]: the mapped abscissae stay ~1e-37 away from the endpoints
T_MAX = 4.0
NODE_BUDGET = 2**14
MIN_LEVEL = 3


def _tanh_sinh_nodes(t_nodes, lower, upper):
    """
    Map nodes t to abscissae on [lower, upper] and their weights.
    Distances to the endpoints are computed without cancellation.
    """
    half = 0.5 * (upper-lower)
    arg = 0.5 * np.pi * np.sinh(t_nodes)

    from_lower = 2*half * expit(2*arg)
    from_upper = 2*half * expit(-2*arg)
    abscissae = np.where(t_nodes < 0, lower + from_lower, upper - from_upper)

    weights = half * 0.5*np.pi * np.cosh(t_nodes) / np.cosh(arg)**2

    return abscissae, weights


def tanh_sinh(func, lower, upper, tol=1e-10, max_nodes=NODE_BUDGET):
    """
    Integrate func over [lower, upper] with the tanh-sinh rule, halving the
    step until two consecutive levels agree to `tol` (absolute).

    Args:
        func (callable): maps an array of abscissae to an array whose last axis
          matches the abscissae (vector-valued integrands are allowed)
        lower (float): left endpoint
        upper (float): right endpoint
        tol (float): absolute tolerance on every component
        max_nodes (int): total number of function evaluations allowed
    Returns:
        float or np.array: integral estimate
    """

    if upper == lower:
        return 0.0 * np.sum(func(np.array([lower])), axis=-1)

    step = 1.0
    t_nodes = np.arange(-T_MAX, T_MAX + 0.5*step, step)
    abscissae, weights = _tanh_sinh_nodes(t_nodes, lower, upper)
    estimate = step * np.sum(func(abscissae) * weights, axis=-1)
    n_evals = t_nodes.size

    level = 0
    while True:
        level += 1
        step /= 2
        t_nodes = np.arange(-T_MAX + step, T_MAX, 2*step)
        n_evals += t_nodes.size

        if n_evals > max_nodes:
            logger.critical(f'tanh-sinh did not reach tol={tol:.1e} within {max_nodes} nodes')
            raise QuadratureError(f'no convergence on [{lower}, {upper}]')

        abscissae, weights = _tanh_sinh_nodes(t_nodes, lower, upper)
        refined = 0.5*estimate + step * np.sum(func(abscissae) * weights, axis=-1)

        error = np.max(np.abs(refined - estimate))
        estimate = refined

        if not np.all(np.isfinite(estimate)):
            raise QuadratureError('integrand produced non-finite values')

        if level >= MIN_LEVEL and error <= tol:
            return estimate


@lru_cache(maxsize=8)
def _legendre(order):
    return np.polynomial.legendre.leggauss(order)


def gauss_panels(func, lower, upper, n_panels, order=32):
    """
    Composite Gauss-Legendre rule on `n_panels` equal panels

    Args:
        func (callable): vectorized integrand
        lower (float): left endpoint
        upper (float): right endpoint
        n_panels (int): number of panels
        order (int): nodes per panel
    Returns:
        float
    """
    nodes, weights = _legendre(order)
    edges = np.linspace(lower, upper, n_panels+1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])

    abscissae = (mid[:, None] + half[:, None]*nodes[None, :]).ravel()
    scaled_weights = (half[:, None]*weights[None, :]).ravel()

    return float(np.sum(func(abscissae) * scaled_weights))
