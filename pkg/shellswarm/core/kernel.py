"""
Power-law attractive-repulsive kernels W(x) = |x|^alpha/alpha - |x|^beta/beta
"""

from collections import namedtuple
import logging

import numpy as np

from shellswarm.errors import DomainError, SingularityError


logger = logging.getLogger('<potentials>')


class KernelParams(namedtuple('KernelParams', ['alpha', 'beta', 'dim'])):
    """
    Exponents (alpha, beta) and ambient dimension n of a kernel.
    Requires -n < beta < alpha.
    """

    __slots__ = ()

    def __new__(cls, alpha, beta, dim):
        alpha, beta = float(alpha), float(beta)

        if int(dim) != dim or dim < 1:
            raise DomainError(f'Dimension must be a positive integer, got {dim}')
        if not alpha > beta:
            logger.critical(f'Attraction exponent alpha={alpha} must exceed beta={beta}')
            raise DomainError('alpha must be strictly larger than beta')
        if not beta > -dim:
            logger.critical(f'Repulsion exponent beta={beta} must exceed -n={-dim}')
            raise DomainError('beta must be larger than -dim')

        return super().__new__(cls, alpha, beta, int(dim))

    def with_dim(self, dim):
        return KernelParams(self.alpha, self.beta, dim)


class Kernel:
    """
    Pair potential W_{alpha,beta} evaluated on distances / displacements.

    The radial helpers work on arrays of distances so that all pairwise
    computations stay vectorized. W(0) is 0 when both exponents are positive.
    """

    def __init__(self, params):
        if params.alpha == 0 or params.beta == 0:
            logger.critical('Logarithmic kernels (zero exponent) are not supported')
            raise DomainError('alpha and beta must be nonzero')
        self.params = params

    @property
    def alpha(self):
        return self.params.alpha

    @property
    def beta(self):
        return self.params.beta

    @property
    def dim(self):
        return self.params.dim

    def __repr__(self):
        return f'Kernel(alpha={self.alpha:g}, beta={self.beta:g}, dim={self.dim})'

    def finite_at_zero(self):
        return min(self.alpha, self.beta) > 0

    def smooth_at_zero(self):
        """
        Whether the gradient extends continuously (as 0) to the origin
        """
        return self.beta >= 2

    def radial_value(self, dist):
        """
        W as a function of the distance |x|

        Args:
            dist (np.array): nonnegative distances
        Returns:
            np.array
        """
        dist = np.asarray(dist, dtype=float)
        zero = dist == 0

        if np.any(zero) and not self.finite_at_zero():
            raise SingularityError('kernel is singular at 0 for a nonpositive exponent')

        safe = np.where(zero, 1.0, dist)
        values = safe**self.alpha/self.alpha - safe**self.beta/self.beta

        return np.where(zero, 0.0, values)

    def radial_factor(self, dist):
        """
        Scalar factor c(|x|) such that grad W(x) = c(|x|) x,
        i.e. |x|^(alpha-2) - |x|^(beta-2), set to 0 at the origin

        Args:
            dist (np.array): nonnegative distances
        Returns:
            np.array
        """
        dist = np.asarray(dist, dtype=float)
        zero = dist == 0

        if np.any(zero) and not self.smooth_at_zero():
            raise SingularityError('kernel gradient is singular at 0 for beta < 2')

        safe = np.where(zero, 1.0, dist)
        factor = safe**(self.alpha-2) - safe**(self.beta-2)

        return np.where(zero, 0.0, factor)
