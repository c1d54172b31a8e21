"""
Radial potentials of spherically symmetric measures.

For a mixture of shells mu = sum_k w_k sigma_{R_k} and the kernel with beta=2,
f(r) = V_mu(r e1) and its first three derivatives are evaluated shell by shell
from their own sphere integrals, written in polar form
(1/omega_n) int_S h dsigma = (omega_{n-1}/omega_n) int_0^pi h(theta) sin^{n-2}(theta) dtheta.
"""

from collections import namedtuple
import logging

import numpy as np
import pandas as pd
from scipy.optimize import brentq
from scipy.interpolate import CubicHermiteSpline

from shellswarm.core.quadrature import tanh_sinh
from shellswarm.errors import DomainError, StructureError
from shellswarm.special import omega_n
from shellswarm.util import write_csv


logger = logging.getLogger('<radial>')

DEFAULT_TOL = 1e-10
PROFILE_COLUMNS = ['r', 'f', 'f1', 'f2', 'f3']

SphereTerms = namedtuple('SphereTerms', ['dist', 'gap', 'cos', 'sin'])


def sphere_terms(theta, r):
    """
    Geometric quantities between r e1 and a point y of the unit sphere at polar
    angle theta: |r e1 - y|, r - y1, cos(theta), sin(theta).
    Written with sin(theta/2) so that they stay accurate for theta -> 0 and r -> 1.
    """
    half_sin_sq = np.sin(0.5*theta)**2
    dist = np.sqrt((r-1)**2 + 4*r*half_sin_sq)
    gap = (r-1) + 2*half_sin_sq

    return SphereTerms(dist, gap, np.cos(theta), np.sin(theta))


def _sphere_integral(func, r, n, tol):
    """
    Average over the unit sphere of S^{n-1} of a function of SphereTerms.
    The polar interval is split at theta=|r-1| when r e1 is close to the sphere.
    """

    if n < 2:
        raise DomainError('sphere averages need n >= 2 (n=1 shells are atom pairs)')

    prefactor = omega_n(n-1) / omega_n(n)

    def integrand(theta):
        values = func(sphere_terms(theta, r))
        if n == 2:
            return values
        return values * np.sin(theta)**(n-2)

    offset = abs(r-1)
    if 0 < offset < 0.5:
        split = min(offset, 0.5*np.pi)
        total = (tanh_sinh(integrand, 0, split, tol=0.5*tol)
                 + tanh_sinh(integrand, split, np.pi, tol=0.5*tol))
    else:
        total = tanh_sinh(integrand, 0, np.pi, tol=tol)

    return prefactor * total


def sphere_average(h, r, n, tol=DEFAULT_TOL):
    """
    Average of h(|r e1 - y|, y1) over the uniform measure on the unit sphere

    Args:
        h (callable): vectorized function of (distance, cosine)
        r (float): position of the evaluation point along e1
        n (int): dimension, n >= 2
        tol (float): absolute tolerance
    Returns:
        float
    """
    return float(_sphere_integral(lambda t: h(t.dist, t.cos), r, n, tol))


def _check_g_args(alpha, r, n):
    if alpha < 2:
        raise DomainError(f'g integrals need alpha >= 2, got {alpha}')
    if alpha == 2 and n == 2 and abs(r) == 1:
        logger.critical('g_2 and G_2 do not converge absolutely at |r|=1 when n=2')
        raise DomainError('excluded case alpha=2, n=2, |r|=1')


def g_alpha(alpha, r, n, tol=DEFAULT_TOL):
    """
    g(r) = int (r - y1) |r e1 - y|^(alpha-4) dsigma(y), odd in r

    Args:
        alpha (float): alpha >= 2
        r (float): radius
        n (int): dimension, n >= 2
        tol (float): absolute tolerance
    Returns:
        float
    """
    _check_g_args(alpha, r, n)
    if r == 0:
        return 0.0

    value = _sphere_integral(lambda t: t.gap * t.dist**(alpha-4), abs(r), n, tol)

    return float(np.sign(r) * value)


def g_capital(alpha, r, n, tol=DEFAULT_TOL):
    """
    G(r) = int |r e1 - y|^(alpha-6) (r - y1) (1 - y1^2) dsigma(y), odd in r

    Args:
        alpha (float): alpha >= 2
        r (float): radius
        n (int): dimension, n >= 2
        tol (float): absolute tolerance
    Returns:
        float
    """
    _check_g_args(alpha, r, n)
    if r == 0:
        return 0.0

    value = _sphere_integral(lambda t: t.dist**(alpha-6) * t.gap * t.sin**2, abs(r), n, tol)

    return float(np.sign(r) * value)


def unit_shell_terms(alpha, s, n, tol=DEFAULT_TOL):
    """
    The four sphere integrals behind f, f', f'', f''' for the unit shell at s e1:
    int |.|^a/a, int |.|^(a-2)(s-y1), int (a-2)(s-y1)^2|.|^(a-4) + |.|^(a-2),
    (a-2) int (s-y1)|.|^(a-6)(3|.|^2 + (a-4)(s-y1)^2), with |.| = |s e1 - y|.

    Returns:
        np.array: 4 values
    """

    def integrand(terms):
        dist, gap = terms.dist, terms.gap
        return np.array([
            dist**alpha / alpha,
            dist**(alpha-2) * gap,
            (alpha-2) * gap**2 * dist**(alpha-4) + dist**(alpha-2),
            (alpha-2) * gap * dist**(alpha-6) * (3*dist**2 + (alpha-4)*gap**2)
        ])

    return _sphere_integral(integrand, s, n, tol)


def _atom_pair_terms(alpha, radius, r):
    """
    f and derivatives for the 1D shell 1/2 (delta_{-R} + delta_R)
    """
    offsets = np.array([r-radius, r+radius])
    size = np.abs(offsets)

    value = size**alpha/alpha - offsets**2/2
    first = size**(alpha-2)*offsets - offsets
    second = (alpha-1)*size**(alpha-2) - 1

    with np.errstate(divide='ignore', invalid='ignore'):
        third = (alpha-1)*(alpha-2)*np.sign(offsets)*size**(alpha-3)
    third = np.where(size == 0, 0.0 if alpha >= 3 else np.nan, third)

    return np.array([value.mean(), first.mean(), second.mean(), third.mean()])


def shell_terms(alpha, radius, r, n, tol=DEFAULT_TOL):
    """
    (f, f', f'', f''') at r >= 0 for the shell of radius `radius` and the
    kernel W_{alpha,2}. Uses the scaling f'''_{sigma_R}(r) = R^(alpha-3) f'''_sigma(r/R).

    Args:
        alpha (float): attraction exponent
        radius (float): shell radius (0 for a point mass at the origin)
        r (float): evaluation radius
        n (int): dimension
        tol (float): absolute quadrature tolerance
    Returns:
        np.array: (f, f1, f2, f3)
    """

    r = abs(r)

    if radius == 0:
        with np.errstate(divide='ignore'):
            third = (alpha-1)*(alpha-2)*r**(alpha-3) if r > 0 else 0.0
        return np.array([r**alpha/alpha - r**2/2, r**(alpha-1) - r,
                         (alpha-1)*r**(alpha-2) - 1, third])

    if n == 1:
        terms = _atom_pair_terms(alpha, radius, r)
    else:
        integrals = unit_shell_terms(alpha, r/radius, n, tol=tol)
        terms = np.array([
            radius**alpha * integrals[0] - (r**2 + radius**2)/2,
            radius**(alpha-1) * integrals[1] - r,
            radius**(alpha-2) * integrals[2] - 1,
            radius**(alpha-3) * integrals[3]
        ])

    if r == 0:
        terms[1] = 0.0
        terms[3] = 0.0

    return terms


def in_profile_window(alpha, n):
    """
    Whether (alpha, beta=2, n) lies where f''' > 0 is guaranteed
    """
    if n >= 2:
        return 2 < alpha < 4
    return alpha > 3


class RadialMixture:
    """
    Spherically symmetric measure written as a weighted mixture of shells.
    A radius of 0 stands for a point mass at the origin; in 1D a shell of
    radius R is the pair 1/2 (delta_{-R} + delta_R).

    Args:
        radii (list): nonnegative radii
        weights (list): positive weights summing to 1. Uniform if None
        dim (int): dimension
    """

    def __init__(self, radii, weights=None, dim=2):
        radii = np.array(radii, dtype=float).ravel()
        if radii.size == 0 or np.any(radii < 0) or not np.all(np.isfinite(radii)):
            raise DomainError('radii must be a nonempty list of nonnegative reals')
        if weights is None:
            weights = np.full(radii.size, 1/radii.size)
        weights = np.array(weights, dtype=float).ravel()
        if weights.size != radii.size or np.any(weights <= 0):
            raise DomainError('one positive weight per radius is required')
        if abs(weights.sum() - 1) > 1e-12:
            raise DomainError(f'shell weights sum to {weights.sum()}')
        if int(dim) != dim or dim < 1:
            raise DomainError(f'invalid dimension {dim}')

        self.radii = radii
        self.weights = weights / weights.sum()
        self.dim = int(dim)

    @classmethod
    def shell(cls, radius, dim):
        return cls([radius], [1.0], dim)

    def __repr__(self):
        return f'RadialMixture(radii={self.radii.tolist()}, dim={self.dim})'

    def terms(self, alpha, r, tol=DEFAULT_TOL):
        """
        Weighted (f, f1, f2, f3) of the mixture at radius r
        """
        total = np.zeros(4)
        for (radius, weight) in zip(self.radii, self.weights):
            total += weight * shell_terms(alpha, radius, r, self.dim, tol=tol)
        return total


class RadialProfile:
    """
    f and its first three derivatives tabulated on an increasing grid of radii.

    `evaluate` (optional) recomputes (f, f1, f2, f3) at any radius and is used
    to polish the roots found on the grid.
    """

    def __init__(self, grid, f, f1, f2, f3, evaluate=None, tol=DEFAULT_TOL):
        arrays = [np.array(x, dtype=float) for x in (grid, f, f1, f2, f3)]
        if len({x.size for x in arrays}) != 1:
            raise DomainError('profile arrays must share their length')
        if np.any(np.diff(arrays[0]) <= 0):
            raise DomainError('profile grid must be strictly increasing')

        (self.grid, self.f, self.f1, self.f2, self.f3) = arrays
        self.evaluate = evaluate
        self.tol = tol

    def to_frame(self):
        return pd.DataFrame(dict(zip(PROFILE_COLUMNS,
                                     (self.grid, self.f, self.f1, self.f2, self.f3))))

    def to_csv(self, output):
        return write_csv(self.to_frame(), output)


def radial_profile(mixture, params, grid, tol=DEFAULT_TOL):
    """
    Tabulate f, f', f'', f''' of V_mu(r e1) for a shell mixture

    Args:
        mixture (RadialMixture)
        params (KernelParams): beta must be 2
        grid (list): nonnegative increasing radii
        tol (float): absolute quadrature tolerance
    Returns:
        RadialProfile
    """

    alpha, beta, _ = params

    if beta != 2:
        logger.critical(f'Radial profiles are only derived for beta=2, got beta={beta}')
        raise DomainError('radial_profile requires beta = 2')
    if alpha <= 2:
        raise DomainError(f'radial_profile requires alpha > 2, got {alpha}')
    if params.dim != mixture.dim:
        raise DomainError(f'Mixture lives in dimension {mixture.dim}, kernel in {params.dim}')

    grid = np.array(grid, dtype=float)
    if np.any(grid < 0):
        raise DomainError('grid radii must be nonnegative (f is even)')

    if not in_profile_window(alpha, mixture.dim):
        logger.warning((f'(alpha={alpha}, n={mixture.dim}) lies outside the window where '
                        "f''' > 0 is guaranteed"))

    logger.debug(f'Radial profile of {mixture!r} on {grid.size} radii (alpha={alpha}, tol={tol:.0e})')

    values = np.array([mixture.terms(alpha, r, tol=tol) for r in grid]).reshape(-1, 4)

    def evaluate(r):
        return mixture.terms(alpha, r, tol=tol)

    return RadialProfile(grid, *values.T, evaluate=evaluate, tol=tol)


def _significant_sign_changes(grid, values, threshold):
    """
    Brackets (index pairs) where values change sign, ignoring values below threshold
    """
    keep = np.nonzero(np.abs(values) > threshold)[0]
    signs = np.sign(values[keep])
    flips = np.nonzero(signs[:-1] != signs[1:])[0]

    return [(keep[i], keep[i+1]) for i in flips]


def _polish_root(profile, component, bracket):
    """
    Locate the zero of column `component` (1 for f1, 2 for f2) inside a grid bracket
    """
    (left, right) = bracket
    a, b = profile.grid[left], profile.grid[right]

    if profile.evaluate is not None:
        return brentq(lambda r: profile.evaluate(r)[component], a, b, xtol=1e-14, rtol=4*np.finfo(float).eps)

    values = (profile.f1, profile.f2)[component-1]
    slopes = (profile.f2, profile.f3)[component-1]
    spline = CubicHermiteSpline([a, b], values[[left, right]], slopes[[left, right]])
    roots = [x for x in spline.roots(extrapolate=False) if a <= x <= b]

    return float(roots[0]) if roots else 0.5*(a+b)


def inflection_and_min(profile):
    """
    Inflection radius (zero of f'') and minimum radius (positive zero of f') of a
    radial profile with f''' > 0

    Args:
        profile (RadialProfile)
    Returns:
        tuple: (R_inflect, r_min). R_inflect is 0 when f'' > 0 on the whole grid,
          and both are 0 when f' > 0 on (0, r_max]
    """

    threshold = 10 * profile.tol
    positive = profile.grid > 0
    grid = profile.grid

    f2_changes = _significant_sign_changes(grid, profile.f2, threshold)

    if len(f2_changes) > 1:
        logger.critical(f"f'' changes sign {len(f2_changes)} times")
        raise StructureError("f'' must change sign at most once")

    if f2_changes:
        (left, _) = f2_changes[0]
        if profile.f2[left] > 0:
            raise StructureError("f'' must go from negative (concave) to positive (convex)")
        r_inflect = _polish_root(profile, 2, f2_changes[0])
    elif np.all(profile.f2[np.abs(profile.f2) > threshold] > 0):
        r_inflect = 0.0
    else:
        raise StructureError("f'' stays negative on the grid: extend the grid")

    f1_values = np.where(positive, profile.f1, 0.0)
    f1_changes = _significant_sign_changes(grid, f1_values, threshold)

    if not f1_changes and r_inflect == 0 and np.all(f1_values[np.abs(f1_values) > threshold] > 0):
        # f' > 0 on r > 0: the minimum sits at the origin
        logger.info("f' > 0 for r > 0: f is minimal at the origin")
        return (0.0, 0.0)

    if len(f1_changes) != 1:
        logger.critical(f"f' has {len(f1_changes)} positive zeros on the grid")
        raise StructureError("f' must vanish exactly once for r > 0")

    (left, _) = f1_changes[0]
    if profile.f1[left] > 0:
        raise StructureError("f' must go from negative to positive at its minimum")

    r_min = _polish_root(profile, 1, f1_changes[0])

    if r_min <= r_inflect:
        raise StructureError(f'minimum {r_min:.6g} not beyond inflection {r_inflect:.6g}')

    return (float(r_inflect), float(r_min))
