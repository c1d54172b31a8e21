"""
Discrete probability measures (weighted point clouds) and signed differences of them
"""

import logging
from pathlib import Path

import numpy as np
from scipy.spatial.distance import pdist

from shellswarm.errors import DomainError
from shellswarm.util import read_json, write_json


logger = logging.getLogger('<measures>')

WEIGHT_SUM_TOL = 1e-6


def _frozen(array):
    array.setflags(write=False)
    return array


class DiscreteMeasure:
    """
    Probability measure supported on finitely many points of R^n.
    Points and weights are read-only arrays once the measure is built.
    Duplicate points are allowed.

    Args:
        points (array-like): (N, dim) coordinates. A flat list is read as N points in 1D
        weights (array-like): N positive weights summing to 1 (within 1e-6). Uniform if None
        dim (int): ambient dimension, inferred from `points` if not set
    """

    def __init__(self, points, weights=None, dim=None):
        points = np.array(points, dtype=float)

        if points.ndim == 1:
            if dim is None or dim == 1:
                points = points.reshape(-1, 1)
            elif points.size == dim:
                points = points.reshape(1, dim)
        if points.ndim != 2 or points.shape[0] == 0:
            logger.critical(f'Cannot build a measure from points with shape {points.shape}')
            raise DomainError('points must be a nonempty (N, dim) array')
        if dim is not None and points.shape[1] != dim:
            logger.critical(f'Points have dimension {points.shape[1]}, expected {dim}')
            raise DomainError('point dimension does not match dim')
        if not np.all(np.isfinite(points)):
            raise DomainError('points must be finite')

        n_atoms = points.shape[0]

        if weights is None:
            weights = np.full(n_atoms, 1/n_atoms)
        else:
            weights = np.array(weights, dtype=float).ravel()
            if weights.size != n_atoms:
                raise DomainError(f'{weights.size} weights for {n_atoms} points')
            if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
                raise DomainError('weights must be finite and positive')
            total = weights.sum()
            if abs(total - 1) > WEIGHT_SUM_TOL:
                logger.critical(f'Weights sum to {total:.3e}')
                raise DomainError(f'weights sum to {total}, not 1')
            weights = weights / total

        self._points = _frozen(points)
        self._weights = _frozen(weights)

    @classmethod
    def _from_arrays(cls, points, weights):
        """
        Build without validation from arrays that are already consistent
        """
        measure = cls.__new__(cls)
        measure._points = _frozen(np.array(points, dtype=float))
        measure._weights = _frozen(np.array(weights, dtype=float))
        return measure

    @property
    def points(self):
        return self._points

    @property
    def weights(self):
        return self._weights

    @property
    def dim(self):
        return self._points.shape[1]

    def __len__(self):
        return self._points.shape[0]

    def __repr__(self):
        return f'DiscreteMeasure(n_atoms={len(self)}, dim={self.dim})'

    def is_uniform(self, tol=1e-12):
        """
        Whether all weights equal 1/N
        """
        return bool(np.all(np.abs(self._weights - 1/len(self)) <= tol))

    def center_of_mass(self):
        """
        Weighted mean of the atoms

        Returns:
            np.array: point of length dim
        """
        return self._weights @ self._points

    def centered(self):
        """
        Translate the measure so that its center of mass sits at the origin

        Returns:
            DiscreteMeasure
        """
        return self.translated(-self.center_of_mass())

    def is_centered(self, tol=1e-12):
        return bool(np.all(np.abs(self.center_of_mass()) < tol))

    def second_moment_matrix(self):
        """
        Tensor sum_i w_i x_i x_i^T

        Returns:
            np.array: symmetric (dim, dim) matrix
        """
        moment = (self._points.T * self._weights) @ self._points
        return 0.5 * (moment + moment.T)

    def support_diameter(self):
        """
        Largest distance between two atoms (0 for a single atom)
        """
        if len(self) == 1:
            return 0.0
        return float(pdist(self._points).max())

    def support_radius(self):
        """
        Largest distance between an atom and the center of mass
        """
        return float(np.linalg.norm(self._points - self.center_of_mass(), axis=1).max())

    def translated(self, shift):
        return DiscreteMeasure._from_arrays(self._points + np.asarray(shift, dtype=float),
                                            self._weights)

    def scaled(self, factor):
        return DiscreteMeasure._from_arrays(factor * self._points, self._weights)

    def transformed(self, matrix):
        """
        Apply the linear map `matrix` (dim x dim) to every atom
        """
        return DiscreteMeasure._from_arrays(self._points @ np.asarray(matrix).T, self._weights)

    def replicated(self, times):
        """
        Same measure written with every atom repeated `times` times
        """
        return DiscreteMeasure._from_arrays(np.repeat(self._points, times, axis=0),
                                            np.repeat(self._weights / times, times))

    @classmethod
    def mixture(cls, measures, coefficients):
        """
        Convex combination sum_k c_k m_k written as the union of all atoms.
        Components with a zero coefficient are dropped.

        Args:
            measures (list): DiscreteMeasure objects of the same dimension
            coefficients (list): nonnegative reals summing to 1
        Returns:
            DiscreteMeasure
        """
        kept = [(m, c) for (m, c) in zip(measures, coefficients) if c > 0]
        if not kept or len({m.dim for (m, _) in kept}) > 1:
            raise DomainError('mixture needs components of a common dimension')
        points = np.vstack([m.points for (m, _) in kept])
        weights = np.concatenate([c*m.weights for (m, c) in kept])
        return cls(points, weights)

    def to_dict(self):
        return {'dim': self.dim,
                'points': self._points.tolist(),
                'weights': self._weights.tolist()}

    @classmethod
    def from_dict(cls, data):
        """
        Build from the JSON schema {"dim": n, "points": [[...]], "weights": [...]}
        (weights omitted means uniform)
        """
        try:
            dim = int(data['dim'])
            points = data['points']
        except (KeyError, TypeError, ValueError) as err:
            logger.critical('Measure file must contain "dim" and "points"')
            raise DomainError('malformed measure description') from err

        points = np.array(points, dtype=float).reshape(-1, dim)
        return cls(points, data.get('weights'), dim=dim)

    def save(self, output):
        return write_json(self.to_dict(), output)

    @classmethod
    def load(cls, path):
        path = Path(path)
        if not path.is_file():
            logger.critical(f'Measure file {path} not found')
            raise DomainError(f'{path} does not exist')
        return cls.from_dict(read_json(path))


class SignedMeasure:
    """
    Difference rho = plus - minus of two probability measures (total mass 0)
    """

    def __init__(self, plus, minus):
        if plus.dim != minus.dim:
            raise DomainError(f'Dimension mismatch: {plus.dim} vs {minus.dim}')
        self.plus = plus
        self.minus = minus

    @property
    def dim(self):
        return self.plus.dim

    def atoms(self):
        """
        All atoms with signed weights (plus first, then minus)

        Returns:
            tuple: (points (N, dim), signed weights (N,))
        """
        points = np.vstack([self.plus.points, self.minus.points])
        weights = np.concatenate([self.plus.weights, -self.minus.weights])
        return (points, weights)

    def __repr__(self):
        return f'SignedMeasure(plus={self.plus!r}, minus={self.minus!r})'
