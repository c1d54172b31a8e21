'''
Tests for discrete and signed measures
'''

from pathlib import Path

import pytest
import numpy as np

from shellswarm.core.measure import DiscreteMeasure, SignedMeasure
from shellswarm.errors import DomainError

from tests.data import generate_measure, generate_measure_file, rotation_2d, TMP_DIR


def test_uniform_default():
    '''
    Weights default to 1/N and arrays are read-only
    '''

    measure = generate_measure(5, 3)

    assert measure.is_uniform()
    assert measure.dim == 3
    assert len(measure) == 5
    with pytest.raises(ValueError):
        measure.points[0, 0] = 10


def test_flat_points_are_1d():
    measure = DiscreteMeasure([-1, 0, 2])

    assert measure.dim == 1
    assert measure.points.shape == (3, 1)


def test_invalid_inputs():
    '''
    Nonpositive weights, wrong totals and empty supports are refused
    '''

    with pytest.raises(DomainError):
        DiscreteMeasure([[0, 0], [1, 1]], [1.5, -0.5])
    with pytest.raises(DomainError):
        DiscreteMeasure([[0, 0], [1, 1]], [0.6, 0.6])
    with pytest.raises(DomainError):
        DiscreteMeasure(np.empty((0, 2)))
    with pytest.raises(DomainError):
        DiscreteMeasure([[0, 0], [1, 1]], dim=3)
    with pytest.raises(DomainError):
        DiscreteMeasure([[0, np.nan]])


def test_duplicates_allowed():
    measure = DiscreteMeasure([[1, 1], [1, 1], [0, 0]])

    assert np.allclose(measure.center_of_mass(), [2/3, 2/3])


def test_centered():
    '''
    Centering removes the center of mass and keeps second moments about it
    '''

    measure = generate_measure(10, 2, uniform=False)
    centered = measure.centered()

    expected = np.cov(measure.points.T, aweights=measure.weights, bias=True)

    assert centered.is_centered()
    assert np.allclose(centered.second_moment_matrix(), expected)


def test_second_moment_symmetric():
    measure = generate_measure(7, 3)
    moments = measure.second_moment_matrix()

    assert np.array_equal(moments, moments.T)
    assert np.all(np.linalg.eigvalsh(moments) >= 0)


def test_diameter_and_radius():
    measure = DiscreteMeasure([[-1, 0], [1, 0], [0, 0.5]])

    assert measure.support_diameter() == pytest.approx(2)
    assert DiscreteMeasure([[3, 3]]).support_diameter() == 0
    assert measure.support_radius() == pytest.approx(np.hypot(1, 1/6))


def test_rigid_motions(angle=0.7):
    '''
    Rotations keep the diameter, translations move the center of mass
    '''

    measure = generate_measure(6, 2)
    rotated = measure.transformed(rotation_2d(angle))
    shifted = measure.translated([1, -2])

    assert rotated.support_diameter() == pytest.approx(measure.support_diameter())
    assert np.allclose(shifted.center_of_mass(), measure.center_of_mass() + [1, -2])
    assert np.allclose(measure.scaled(2).second_moment_matrix(), 4*measure.second_moment_matrix())


def test_replicated():
    measure = generate_measure(3, 2)
    copies = measure.replicated(4)

    assert len(copies) == 12
    assert copies.is_uniform()
    assert np.allclose(copies.second_moment_matrix(), measure.second_moment_matrix())


def test_mixture():
    '''
    Convex combinations concatenate atoms and drop null components
    '''

    first = DiscreteMeasure([[0, 0]])
    second = DiscreteMeasure([[1, 0], [0, 1]])

    mixture = DiscreteMeasure.mixture([first, second], [0.5, 0.5])
    single = DiscreteMeasure.mixture([first, second], [0, 1])

    assert np.allclose(mixture.weights, [0.5, 0.25, 0.25])
    assert len(single) == 2

    with pytest.raises(DomainError):
        DiscreteMeasure.mixture([first, DiscreteMeasure([1.0])], [0.5, 0.5])


def test_save_load():
    '''
    Measure files keep points, weights and dimension
    '''

    filepath = generate_measure_file(5, 3, filename='save_load.json')
    loaded = DiscreteMeasure.load(filepath)
    measure = generate_measure(5, 3)

    assert loaded.dim == 3
    assert np.array_equal(loaded.points, measure.points)
    assert np.allclose(loaded.weights, measure.weights)


def test_load_malformed():
    filepath = Path(TMP_DIR, 'malformed.json')
    filepath.write_text('{"points": [[0, 1]]}')

    with pytest.raises(DomainError):
        DiscreteMeasure.load(filepath)
    with pytest.raises(DomainError):
        DiscreteMeasure.load(Path(TMP_DIR, 'missing.json'))


def test_signed_measure():
    '''
    Atoms of plus come first with positive weights
    '''

    plus = DiscreteMeasure([[0, 0], [1, 0]])
    minus = DiscreteMeasure([[0, 1]])

    (points, weights) = SignedMeasure(plus, minus).atoms()

    assert points.shape == (3, 2)
    assert weights.sum() == pytest.approx(0)
    assert list(weights) == [0.5, 0.5, -1]

    with pytest.raises(DomainError):
        SignedMeasure(plus, DiscreteMeasure([1.0]))


if __name__ == '__main__':
    test_centered()
    test_save_load()
