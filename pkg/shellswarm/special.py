"""
Gamma function and the closed-form constants attached to power-law kernels:
sphere areas, the Fourier constant C(alpha), the equilibrium shell radius,
the stability threshold beta* and the support diameter bound
"""

import math
import logging

from shellswarm.errors import DomainError, PoleError


logger = logging.getLogger('<special>')

LANCZOS_G = 7
LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7
)


def gamma(z):
    """
    Euler Gamma function (Lanczos approximation, g=7, 9 terms).
    Arguments below 1/2 go through the reflection formula.

    Args:
        z (float): real argument, not a nonpositive integer
    Returns:
        float
    """

    z = float(z)

    if z <= 0 and z == math.floor(z):
        logger.critical(f'Gamma has a pole at z={z:g}')
        raise PoleError(f'Gamma is not defined at {z:g}')

    if z < 0.5:
        return math.pi / (math.sin(math.pi*z) * gamma(1-z))

    z -= 1
    series = LANCZOS_COEFFS[0]
    for (i, coeff) in enumerate(LANCZOS_COEFFS[1:], 1):
        series += coeff / (z+i)

    t = z + LANCZOS_G + 0.5

    return math.sqrt(2*math.pi) * t**(z+0.5) * math.exp(-t) * series


def omega_n(n):
    """
    Surface area of the unit sphere S^{n-1} in R^n, 2 pi^(n/2) / Gamma(n/2)
    """
    if n < 1:
        raise DomainError('n must be at least 1')
    return 2 * math.pi**(n/2) / gamma(n/2)


def c_of_alpha(alpha, n):
    """
    Constant C(alpha) = 2^(alpha+n/2) Gamma((alpha+n)/2) / Gamma(-alpha/2) of the
    Fourier representation of |x|^alpha. Negative on (0,2), positive on (2,4).

    Args:
        alpha (float): exponent in (0,2) or (2,4)
        n (int): dimension
    Returns:
        float
    """
    if not (0 < alpha < 4) or alpha == 2:
        logger.critical(f'C(alpha) is only used for alpha in (0,2)U(2,4), got {alpha}')
        raise DomainError(f'alpha={alpha} outside (0,2)U(2,4)')

    return 2**(alpha + n/2) * gamma((alpha+n)/2) / gamma(-alpha/2)


def shell_radius_closed_form(params):
    """
    Radius of the uniform shell steady state,
    R = 1/2 [G((b+n-1)/2) G(a/2+n-1) / (G(b/2+n-1) G((a+n-1)/2))]^(1/(a-b)).
    Evaluated as is; the caller decides whether (alpha, beta) is physical.

    Args:
        params (KernelParams)
    Returns:
        float
    """

    alpha, beta, n = params

    ratio = (gamma((beta+n-1)/2) * gamma(alpha/2+n-1)
             / (gamma(beta/2+n-1) * gamma((alpha+n-1)/2)))

    if ratio <= 0:
        raise DomainError(f'Gamma ratio {ratio:.3e} is not positive for {tuple(params)}')

    return 0.5 * ratio**(1/(alpha-beta))


def beta_star(alpha, n):
    """
    Stability threshold ((3-n)alpha - 10 + 7n - n^2) / (alpha + n - 3)
    """
    denominator = alpha + n - 3
    if denominator == 0:
        raise ZeroDivisionError(f'beta* undefined for alpha + n = 3 (alpha={alpha}, n={n})')
    return ((3-n)*alpha - 10 + 7*n - n**2) / denominator


def stability_regime(params):
    """
    Position of beta relative to beta*(alpha, n)

    Args:
        params (KernelParams)
    Returns:
        dict: beta_star, regime ('nonlinearly stable', 'unstable', 'critical'
          or 'undetermined') and whether beta >= 2 (mildly repulsive)
    """

    alpha, beta, n = params
    try:
        threshold = beta_star(alpha, n)
    except ZeroDivisionError:
        return dict(beta_star=None, regime='undetermined', mildly_repulsive=beta >= 2)

    if abs(beta - threshold) <= 1e-12:
        regime = 'critical'
    elif beta > threshold:
        regime = 'nonlinearly stable'
    else:
        regime = 'unstable'

    return dict(beta_star=threshold, regime=regime, mildly_repulsive=beta >= 2)


def diameter_bound(params):
    """
    Positive zero z of r^alpha/alpha - r^beta/beta and its limit e^(1/beta) as
    alpha decreases to beta. Minimizers have support diameter below the limit.

    Args:
        params (KernelParams): alpha > beta > 0
    Returns:
        tuple: (z, limit)
    """

    alpha, beta, _ = params
    if beta <= 0:
        raise DomainError(f'diameter bound needs beta > 0, got {beta}')

    zero = (alpha/beta)**(1/(alpha-beta))

    return (zero, math.exp(1/beta))
