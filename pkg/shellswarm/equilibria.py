"""
Equilibrium configurations of power-law swarms: uniform shells, discrete rings,
simplices and cross-polytopes, with the tools to check that a configuration is
steady (Euler-Lagrange residuals) and to locate the steady shell radius.
"""

from collections import namedtuple
import logging

import numpy as np
from scipy.optimize import bisect

from shellswarm.core.kernel import Kernel
from shellswarm.core.measure import DiscreteMeasure
from shellswarm.errors import BracketError, DomainError, UnsupportedInputError
from shellswarm.potentials import interaction_energy, particle_velocities, potential_field
from shellswarm.radial import in_profile_window, shell_terms, sphere_average
from shellswarm.special import shell_radius_closed_form
from shellswarm.util import make_rng, spawn_rngs


logger = logging.getLogger('<equilibria>')

RingConfig = namedtuple('RingConfig', ['k', 'radius'])
SimplexConfig = namedtuple('SimplexConfig', ['dim', 'edge'])

GOLDEN_ANGLE = np.pi * (3 - np.sqrt(5))
PROBE_RADII = 64
PROBE_DIRECTIONS = 64
PROBE_POINTS_1D = 4097


#============================================================#
#================ Steady shell radius =======================#
#============================================================#

def c_alpha_constant(alpha, n, tol=1e-12):
    """
    c_alpha = int |e1 - y|^(alpha-2) (1 - y1) dsigma(y), the radial force factor of
    the unit shell on its own points. On the unit sphere 1 - y1 = |e1 - y|^2/2.

    Args:
        alpha (float): exponent > 1
        n (int): dimension
        tol (float): quadrature tolerance
    Returns:
        float
    """
    if alpha <= 1:
        raise DomainError(f'c_alpha needs alpha > 1, got {alpha}')
    if n == 1:
        return 2**(alpha-2)

    return sphere_average(lambda dist, _: 0.5*dist**alpha, 1.0, n, tol=tol)


def shell_radius_rootfind(params, tol=1e-12):
    """
    Radius where the shell force R^(alpha-1) c_alpha - R^(beta-1) c_beta vanishes,
    R = (c_beta/c_alpha)^(1/(alpha-beta))

    Args:
        params (KernelParams): alpha > beta > 1
        tol (float): quadrature tolerance
    Returns:
        float
    """

    alpha, beta, n = params
    if beta <= 1:
        raise DomainError(f'shell force balance needs beta > 1, got {beta}')

    ratio = c_alpha_constant(beta, n, tol=tol) / c_alpha_constant(alpha, n, tol=tol)

    return ratio**(1/(alpha-beta))


def r_star(params, tol=1e-12, n_scan=64):
    """
    Steady radius r* of a single shell for beta=2, i.e. the root of
    R -> f'_{sigma_R}(R), found by a log-spaced scan on [1e-3, e^(1/2)]
    followed by bisection. Two closed forms are reported next to the root:
    (1/(f'_{sigma_1}(1)+1))^(1/(alpha-2)), which agrees with it, and
    (2/(f'_{sigma_1}(1)+2))^(1/(alpha-2)), which does not and is flagged.

    Args:
        params (KernelParams): beta must be 2
        tol (float): quadrature tolerance
        n_scan (int): scan points
    Returns:
        dict: root, corrected_closed_form, printed_closed_form, flagged
    """

    alpha, beta, n = params

    if beta != 2:
        raise DomainError('r_star is defined for beta = 2')
    if alpha <= 2:
        raise DomainError(f'r_star needs alpha > 2, got {alpha}')
    if not in_profile_window(alpha, n):
        logger.warning(f'(alpha={alpha}, n={n}) is outside the shell minimizer window')

    def force(radius):
        return shell_terms(alpha, radius, radius, n, tol=tol)[1]

    scan = np.geomspace(1e-3, np.exp(0.5), n_scan)
    values = np.array([force(r) for r in scan])
    flips = np.nonzero(np.sign(values[:-1]) != np.sign(values[1:]))[0]

    if flips.size == 0:
        logger.critical(f'No sign change of the shell force on [1e-3, e^(1/2)] for {tuple(params)}')
        raise BracketError('could not bracket r*')

    lower, upper = scan[flips[0]], scan[flips[0]+1]
    root = bisect(force, lower, upper, xtol=1e-12)

    slope = shell_terms(alpha, 1.0, 1.0, n, tol=tol)[1]
    corrected = (1/(slope+1))**(1/(alpha-2))
    printed = (2/(slope+2))**(1/(alpha-2))
    flagged = abs(printed - root) > 1e-8

    if flagged:
        logger.warning((f'r* = {root:.10f} disagrees with (2/(f\'+2))^(1/(alpha-2)) = {printed:.10f}; '
                        'the root-found value is used'))

    return dict(root=root, corrected_closed_form=corrected,
                printed_closed_form=printed, flagged=flagged)


#============================================================#
#==================== Constructions =========================#
#============================================================#

def ring_measure(cfg):
    """
    k equal masses at cfg.radius * exp(2 pi i m/k), m = 0..k-1

    Args:
        cfg (RingConfig)
    Returns:
        DiscreteMeasure
    """
    if cfg.k < 1 or cfg.radius < 0:
        raise DomainError(f'Invalid ring {cfg}')

    angles = 2*np.pi*np.arange(cfg.k)/cfg.k
    points = cfg.radius * np.column_stack([np.cos(angles), np.sin(angles)])

    return DiscreteMeasure(points, dim=2)


def simplex_measure(n, edge=1.0):
    """
    Uniform measure on the vertices of a centered regular n-simplex.
    The vertices are the standard basis of R^(n+1) projected on the
    hyperplane sum(x) = 0 and written in an orthonormal basis of it.

    Args:
        n (int): dimension
        edge (float): edge length
    Returns:
        DiscreteMeasure
    """
    if n < 1:
        raise DomainError('simplex needs n >= 1')

    centered_basis = (np.eye(n+1) - np.full((n+1, n+1), 1/(n+1))) / np.sqrt(2)
    (_, _, vt) = np.linalg.svd(centered_basis)
    vertices = edge * centered_basis @ vt[:n].T

    return DiscreteMeasure(vertices, dim=n)


def cross_polytope_measure(n, radius):
    """
    Uniform measure on the 2n points +-R e_i
    """
    if n < 1:
        raise DomainError('cross-polytope needs n >= 1')
    basis = radius * np.eye(n)
    return DiscreteMeasure(np.vstack([basis, -basis]), dim=n)


def fibonacci_directions(count):
    """
    Fibonacci lattice of unit vectors in R^3
    """
    i = np.arange(count)
    z = 1 - (2*i + 1)/count
    rho = np.sqrt(1 - z**2)
    phi = GOLDEN_ANGLE * i
    return np.column_stack([rho*np.cos(phi), rho*np.sin(phi), z])


def sphere_directions(count, n):
    """
    `count` quasi-uniform unit vectors in R^n (n >= 2). Even counts are
    antipodally symmetric.
    """
    if n == 2:
        angles = 2*np.pi*np.arange(count)/count
        return np.column_stack([np.cos(angles), np.sin(angles)])

    if count % 2:
        if n == 3:
            return fibonacci_directions(count)
        raise DomainError('odd direction counts are only supported for n <= 3')

    half = count // 2
    if n == 3:
        upper = fibonacci_directions(count)[:half]
    else:
        upper = make_rng(0).standard_normal((half, n))
        upper /= np.linalg.norm(upper, axis=1, keepdims=True)

    return np.vstack([upper, -upper])


def shell_proxy(radius, n, count):
    """
    `count` equal masses spread on the sphere of radius R in R^n: the half
    masses at +-R for n=1, the exact count-ring for n=2, an antipodally
    symmetric Fibonacci lattice for n=3. Counts must be even unless n=2.

    Args:
        radius (float): sphere radius
        n (int): dimension
        count (int): number of atoms
    Returns:
        DiscreteMeasure
    """

    if count < 1:
        raise DomainError('shell proxy needs at least one atom')

    # only rings and antipodal sets are exactly centered
    if n != 2 and count % 2:
        raise DomainError(f'shell proxies in dimension {n} need an even number of atoms, got {count}')

    if n == 1:
        points = np.repeat([-radius, radius], count//2)
        return DiscreteMeasure(points.reshape(-1, 1), dim=1)

    return DiscreteMeasure(radius * sphere_directions(count, n), dim=n)


def ring_steady_radius(k, params):
    """
    Radius at which the k-ring is steady, found by bisection on the radial
    force felt by the atom at R e1 over [R/2, 2R], R the shell radius.

    Args:
        k (int): number of atoms, k >= 3
        params (KernelParams): alpha > beta > 1, dim 2
    Returns:
        float
    """

    if k < 3:
        raise DomainError(f'rings need k >= 3, got {k}')
    if params.dim != 2:
        raise DomainError('rings live in dimension 2')
    if params.beta <= 1:
        raise DomainError(f'ring steady radius needs beta > 1, got {params.beta}')

    kernel = Kernel(params)
    m = np.arange(1, k)
    chord_unit = 2*np.sin(np.pi*m/k)

    def radial_force(radius):
        chord = radius * chord_unit
        # e1-component of x_0 - x_m is chord^2 / (2 radius)
        return np.sum(kernel.radial_factor(chord) * chord**2) / (2*radius*k)

    guess = shell_radius_closed_form(params)

    try:
        return bisect(radial_force, 0.5*guess, 2*guess, xtol=1e-14)
    except ValueError as err:
        logger.critical(f'No sign change of the {k}-ring force on [{0.5*guess:.4f}, {2*guess:.4f}]')
        raise BracketError(f'could not bracket the {k}-ring radius') from err


#============================================================#
#================ Steadiness diagnostics ====================#
#============================================================#

def _probe_grid(measure):
    center = measure.center_of_mass()
    reach = measure.support_radius() or 1.0

    if measure.dim == 1:
        offsets = np.linspace(-2*reach, 2*reach, PROBE_POINTS_1D).reshape(-1, 1)
        return center + offsets

    radii = reach * np.arange(1, PROBE_RADII+1) / (PROBE_RADII/2)
    directions = sphere_directions(PROBE_DIRECTIONS, measure.dim)
    offsets = (radii[:, None, None] * directions[None, :, :]).reshape(-1, measure.dim)

    return np.vstack([center, center + offsets])


def euler_lagrange_residual(kernel, measure):
    """
    How far a measure is from the Euler-Lagrange condition of the energy

    Args:
        kernel (Kernel)
        measure (DiscreteMeasure)
    Returns:
        dict:
          grad_max: max of |grad V| over the support,
          value_spread: max - min of V over the support,
          exterior_min_gap: min of V on a probe grid minus max of V on the support.
            A negative gap means V is lower away from the support
    """

    grad_max = float(np.linalg.norm(particle_velocities(kernel, measure), axis=1).max())

    support_values = np.atleast_1d(potential_field(kernel, measure, measure.points))
    probe_values = potential_field(kernel, measure, _probe_grid(measure))

    result = dict(grad_max=grad_max,
                  value_spread=float(support_values.max() - support_values.min()),
                  exterior_min_gap=float(probe_values.min() - support_values.max()))

    logger.debug(f'Euler-Lagrange residual of {measure!r}: {result}')

    return result


def classify_radial_state(mixture, params, tol=1e-10, steady_tol=1e-8):
    """
    Classify a shell mixture as a stationary radial state. Stationary states
    are supported on {0, r}: the single shell at r* is the minimizer, a shell
    plus a point mass s at the origin is steady but not minimizing.

    Args:
        mixture (RadialMixture)
        params (KernelParams): beta must be 2
        tol (float): quadrature tolerance
        steady_tol (float): largest |f'| accepted on the support
    Returns:
        dict: state, residual, origin_mass, r_star
    """

    if params.beta != 2:
        raise DomainError('radial states are classified for beta = 2')

    alpha = params.alpha
    origin_mass = float(mixture.weights[mixture.radii == 0].sum())
    positive = np.unique(mixture.radii[mixture.radii > 0])

    residual = max([abs(mixture.terms(alpha, r, tol=tol)[1]) for r in positive], default=0.0)
    star = r_star(params, tol=max(tol, 1e-12))['root']

    if len(positive) > 1 or residual > steady_tol:
        state = 'not steady'
    elif origin_mass > 0:
        state = f'steady (with origin mass {origin_mass:g})'
    elif abs(positive[0] - star) <= steady_tol:
        state = 'minimizer'
    else:
        state = 'not steady'

    return dict(state=state, residual=residual, origin_mass=origin_mass, r_star=star)


def even_perturbation(measure, size, rng):
    """
    Random even (x -> -x symmetric) perturbation of an even 1D measure: each
    positive atom is split in 2 to 4 pieces moved by at most `size`, and the
    negative half is rebuilt as the mirror image.

    Args:
        measure (DiscreteMeasure): even 1D measure
        size (float): largest displacement (d_inf radius)
        rng (np.random.Generator)
    Returns:
        DiscreteMeasure
    """

    if measure.dim != 1:
        raise DomainError('even perturbations are defined in 1D')

    x, w = measure.points[:, 0], measure.weights
    order = np.argsort(x)
    if not np.allclose(x[order], -x[order][::-1], atol=1e-12) or not np.allclose(w[order], w[order][::-1], atol=1e-12):
        raise DomainError('measure is not even')

    points, weights = [x[x == 0]], [w[x == 0]]

    for (position, weight) in zip(x[x > 0], w[x > 0]):
        pieces = rng.integers(2, 5)
        shares = weight * rng.dirichlet(np.ones(pieces))
        moved = position + rng.uniform(-size, size, pieces)
        points.extend([moved, -moved])
        weights.extend([shares, shares])

    points, weights = np.concatenate(points), np.concatenate(weights)

    return DiscreteMeasure(points.reshape(-1, 1), weights / weights.sum(), dim=1)


def local_minimality_check(kernel, measure, trials=20, size=0.05, seed=0):
    """
    Energy change under random even perturbations of a 1D measure

    Args:
        kernel (Kernel)
        measure (DiscreteMeasure): even 1D measure
        trials (int): number of perturbations
        size (float): largest displacement
        seed (int): master seed
    Returns:
        dict: trials, size, min_gap, all_higher
    """

    reference = interaction_energy(kernel, measure)
    gaps = [interaction_energy(kernel, even_perturbation(measure, size, rng)) - reference
            for rng in spawn_rngs(seed, trials)]

    return dict(trials=trials, size=size, min_gap=float(min(gaps)),
                all_higher=bool(min(gaps) > 0))


def minimizer_kind(params):
    """
    Which family minimizes the energy for (alpha, beta, n), if known:
    'shell' in the window where the shell is the minimizer, 'simplex' for
    alpha > 4 and beta = 2 in n >= 2.
    """
    alpha, beta, n = params
    if beta == 2 and in_profile_window(alpha, n):
        return 'shell'
    if beta == 2 and alpha > 4 and n >= 2:
        return 'simplex'
    raise UnsupportedInputError(f'minimizing family unknown for {tuple(params)}')
