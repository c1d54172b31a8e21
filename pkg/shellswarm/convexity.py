"""
The quadratic form F_alpha(rho) = sum_ij s_i s_j |x_i - x_j|^alpha on neutral
signed measures (zero mass, zero first moment), its sign, and the convexity of
the pure power energy along segments of measures
"""

import math
import logging

import numpy as np
from scipy.integrate import quad
from scipy.spatial.distance import cdist

from shellswarm.core.measure import SignedMeasure
from shellswarm.core.quadrature import gauss_panels, tanh_sinh
from shellswarm.errors import DomainError
from shellswarm.special import c_of_alpha
from shellswarm.util import spawn_rngs


logger = logging.getLogger('<convexity>')

NEUTRAL_TOL = 1e-12
MIN_WEIGHT = 1e-9
SERIES_TERMS = 40
XI_MAX = 200.0


class NeutralMeasure:
    """
    Signed atoms with zero total mass and zero first moment

    Args:
        points (array-like): (N, dim) coordinates
        weights (array-like): N signed weights
        dim (int): dimension, inferred from points if None
    """

    def __init__(self, points, weights, dim=None):
        weights = np.array(weights, dtype=float).ravel()
        points = np.array(points, dtype=float)
        if dim is not None:
            points = points.reshape(-1, dim)
        elif points.ndim == 1:
            points = points.reshape(-1, 1)
        if points.shape[0] != weights.size:
            raise DomainError(f'{weights.size} weights for {points.shape[0]} points')

        scale = max(1.0, float(np.abs(weights).sum()))
        if abs(weights.sum()) >= NEUTRAL_TOL*scale:
            raise DomainError(f'total mass {weights.sum():.3e} is not zero')
        if np.any(np.abs(weights @ points) >= NEUTRAL_TOL*scale):
            raise DomainError(f'first moment {weights @ points} is not zero')

        self.points = points
        self.weights = weights

    @classmethod
    def from_signed(cls, signed):
        return cls(*signed.atoms(), dim=signed.dim)

    @classmethod
    def zero(cls, dim):
        return cls(np.empty((0, dim)), np.empty(0), dim=dim)

    @property
    def dim(self):
        return self.points.shape[1]

    def __len__(self):
        return self.weights.size

    def __repr__(self):
        return f'NeutralMeasure(n_atoms={len(self)}, dim={self.dim})'

    def dilated(self, factor):
        return NeutralMeasure(factor*self.points, self.weights, dim=self.dim)

    def transformed(self, matrix):
        return NeutralMeasure(self.points @ np.asarray(matrix).T, self.weights, dim=self.dim)


def f_alpha_form(rho, alpha):
    """
    F_alpha(rho) = sum_ij s_i s_j |x_i - x_j|^alpha, summed with correct rounding

    Args:
        rho (NeutralMeasure)
        alpha (float): alpha > 0
    Returns:
        float
    """
    if alpha <= 0:
        raise DomainError(f'F_alpha needs alpha > 0, got {alpha}')
    if len(rho) == 0:
        return 0.0

    terms = np.outer(rho.weights, rho.weights) * cdist(rho.points, rho.points)**alpha

    return math.fsum(terms.ravel())


def random_neutral_measure(n, rng, max_tries=1000):
    """
    6 to 12 atoms uniform in the unit ball with random signed weights, projected
    on zero mass and zero first moment. Draws where one sign disappears or a
    weight falls below 1e-9 are rejected. The positive part has mass 1.

    Args:
        n (int): dimension
        rng (np.random.Generator)
        max_tries (int): rejection limit
    Returns:
        NeutralMeasure
    """

    for _ in range(max_tries):
        count = rng.integers(max(6, n+3), max(13, n+8))

        directions = rng.standard_normal((count, n))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        points = directions * rng.uniform(size=(count, 1))**(1/n)

        weights = rng.choice([-1.0, 1.0], size=count) * rng.uniform(0.5, 1.5, size=count)

        constraints = np.vstack([np.ones(count), points.T])
        weights = weights - constraints.T @ np.linalg.solve(constraints @ constraints.T, constraints @ weights)

        if weights.max() <= 0 or weights.min() >= 0 or np.abs(weights).min() < MIN_WEIGHT:
            continue

        return NeutralMeasure(points, weights / weights[weights > 0].sum(), dim=n)

    raise DomainError(f'no admissible neutral measure after {max_tries} draws')


def expected_sign(alpha):
    if alpha == 2:
        return 'zero'
    if alpha == 4:
        return 'nonnegative'
    if 2 < alpha < 4:
        return 'strictly positive'
    if 0 < alpha < 2:
        return 'strictly negative'
    raise DomainError(f'no sign prediction for alpha={alpha}')


def _verdict(values):
    if np.all(np.abs(values) < NEUTRAL_TOL):
        return 'zero'
    if np.all(values > 0):
        return 'strictly positive'
    if np.all(values < 0):
        return 'strictly negative'
    if np.all(values >= -NEUTRAL_TOL):
        return 'nonnegative'
    return 'indefinite'


def sign_classify(alpha, n, trials=200, seed=0):
    """
    Sign of F_alpha over random neutral measures, checked against the
    prediction (negative on (0,2), zero at 2, positive on (2,4), nonnegative at 4)

    Args:
        alpha (float): exponent in (0, 4]
        n (int): dimension
        trials (int): number of random measures
        seed (int): master seed, one child seed per trial
    Returns:
        dict: alpha, n, trials, seed, min, max, verdict, expected, consistent
    """

    expected = expected_sign(alpha)
    values = np.array([f_alpha_form(random_neutral_measure(n, rng), alpha)
                       for rng in spawn_rngs(seed, trials)])

    consistent = {
        'zero': np.all(np.abs(values) < NEUTRAL_TOL),
        'nonnegative': np.all(values >= -NEUTRAL_TOL),
        'strictly positive': np.all(values > 0),
        'strictly negative': np.all(values < 0)
    }[expected]

    report = dict(alpha=alpha, n=n, trials=trials, seed=seed,
                  min=float(values.min()), max=float(values.max()),
                  verdict=_verdict(values), expected=expected, consistent=bool(consistent))

    logger.info(f'F_{alpha:g} over {trials} neutral measures in R^{n}: [{report["min"]:.3e}, {report["max"]:.3e}]')

    return report


def _power_energy(points, weights, alpha):
    """
    1/2 sum_ij w_i w_j |x_i - x_j|^alpha / alpha
    """
    terms = np.outer(weights, weights) * cdist(points, points)**alpha
    return 0.5 * math.fsum(terms.ravel()) / alpha


def segment_energy(m0, m1, alpha, t):
    """
    Pure power energy of the mixture (1-t) m0 + t m1
    """
    points = np.vstack([m0.points, m1.points])
    weights = np.concatenate([(1-t)*m0.weights, t*m1.weights])
    return _power_energy(points, weights, alpha)


def segment_second_derivative(m0, m1, alpha, check_tol=1e-10):
    """
    Second derivative of t -> E((1-t) m0 + t m1) for the energy of |x|^alpha/alpha,
    constant in t and equal to F_alpha(m1 - m0)/alpha. It is compared with
    4 (a(0) - 2 a(1/2) + a(1)).

    Args:
        m0 (DiscreteMeasure): centered measure
        m1 (DiscreteMeasure): centered measure of the same dimension
        alpha (float): exponent > 0
        check_tol (float): tolerance of the finite difference comparison
    Returns:
        float
    """

    rho = NeutralMeasure.from_signed(SignedMeasure(m1, m0))
    value = f_alpha_form(rho, alpha) / alpha

    difference = 4 * (segment_energy(m0, m1, alpha, 0) - 2*segment_energy(m0, m1, alpha, 0.5)
                      + segment_energy(m0, m1, alpha, 1))

    if abs(difference - value) > check_tol * max(1.0, abs(value)):
        logger.warning(f'Segment curvature {value:.12g} differs from its finite difference {difference:.12g}')

    return value


def midpoint_energy_gap(m0, m1, alpha):
    """
    1/2 E(m0) + 1/2 E(m1) - E((m0 + m1)/2) for the energy of |x|^alpha/alpha,
    positive for distinct centered measures when 2 < alpha < 4
    """
    return (0.5*segment_energy(m0, m1, alpha, 0) + 0.5*segment_energy(m0, m1, alpha, 1)
            - segment_energy(m0, m1, alpha, 0.5))


def _reduced_series(x, weights):
    """
    Coefficients c_k such that rho_hat(xi) = xi^2 sum_k c_k xi^(k-2) for k >= 2,
    from the moments of rho (mass and first moment vanish)
    """
    orders = np.arange(2, SERIES_TERMS+1)
    moments = np.array([weights @ x**k for k in orders])
    factorials = np.array([math.factorial(k) for k in orders], dtype=float)
    # (-2 pi i)^k
    phases = (-2j*np.pi)**orders
    return orders, phases * moments / factorials


def fourier_side(rho, alpha, xi_max=XI_MAX, tol=1e-12):
    """
    C(alpha) (2 pi)^(-alpha-1/2) int |xi|^(-alpha-1) |rho_hat(xi)|^2 dxi for a 1D
    neutral measure, rho_hat(xi) = sum_j s_j exp(-2 pi i xi x_j). Equals F_alpha(rho).

    The half line is cut in three: near 0 rho_hat is a moment series, up to
    xi_max Gauss-Legendre panels follow the oscillations, and beyond xi_max the
    mean part is exact and each pair term is integrated along a rotated contour.

    Args:
        rho (NeutralMeasure): 1D measure
        alpha (float): in (0,2) or (2,4)
        xi_max (float): start of the tail
        tol (float): tolerance of the near-zero quadrature
    Returns:
        float
    """

    if rho.dim != 1:
        logger.critical('The Fourier side is only evaluated in dimension 1')
        raise DomainError('fourier_side needs n = 1')

    constant = c_of_alpha(alpha, 1)
    x, s = rho.points[:, 0], rho.weights
    reach = float(np.abs(x).max()) if len(rho) else 0.0

    if reach == 0:
        return 0.0

    xi_0 = 1 / (2*np.pi*reach)
    (orders, coeffs) = _reduced_series(x, s)

    def near_zero(xi):
        reduced = np.sum(coeffs[:, None] * xi[None, :]**(orders[:, None]-2), axis=0)
        return xi**(3-alpha) * np.abs(reduced)**2

    def power_spectrum(xi):
        phase = 2*np.pi*np.outer(xi, x)
        return (np.cos(phase) @ s)**2 + (np.sin(phase) @ s)**2

    head = tanh_sinh(near_zero, 0.0, xi_0, tol=tol)

    spread = np.ptp(x)
    n_panels = int(np.ceil((xi_max - xi_0) * max(1.0, spread)))
    body = gauss_panels(lambda xi: xi**(-alpha-1) * power_spectrum(xi), xi_0, xi_max, n_panels)

    tail = np.sum(s**2) * xi_max**(-alpha) / alpha
    power = alpha + 1
    for i in range(len(x)):
        for j in range(i+1, len(x)):
            freq = 2*np.pi*abs(x[i] - x[j])
            tail += 2*s[i]*s[j]*_cosine_tail(power, freq, xi_max)

    total = 2*(head + body + tail)

    return float(constant * (2*np.pi)**(-alpha-0.5) * total)


def _cosine_tail(power, freq, start):
    """
    int_start^inf xi^(-power) cos(freq xi) dxi, written as
    Re[i e^(i freq start) int_0^inf (start + i t)^(-power) e^(-freq t) dt]
    """
    if freq == 0:
        return start**(1-power) / (power-1)

    def rotated(t, part):
        value = (start + 1j*t)**(-power) * np.exp(-freq*t)
        return value.real if part == 'real' else value.imag

    real = quad(rotated, 0, np.inf, args=('real',), epsabs=1e-14, epsrel=1e-12, limit=200)[0]
    imag = quad(rotated, 0, np.inf, args=('imag',), epsabs=1e-14, epsrel=1e-12, limit=200)[0]

    return float((1j*np.exp(1j*freq*start)*(real + 1j*imag)).real)
