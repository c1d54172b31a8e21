'''
Tests for kernels, interaction energies and potentials
'''

import pytest
import numpy as np
from hypothesis import given, strategies
from hypothesis import settings as hyp_settings

from shellswarm.core.kernel import Kernel, KernelParams
from shellswarm.core.measure import DiscreteMeasure
from shellswarm.equilibria import simplex_measure
from shellswarm.errors import DomainError, SingularityError
from shellswarm.potentials import (kernel_value, kernel_gradient, interaction_energy,
                                   potential_field, field_gradient, particle_velocities,
                                   force_residual)

from tests.data import generate_measure, rotation_2d

KERNEL = Kernel(KernelParams(3, 2, 2))


def test_params_validation():
    '''
    -n < beta < alpha and integer dimension
    '''

    with pytest.raises(DomainError):
        KernelParams(2, 3, 2)
    with pytest.raises(DomainError):
        KernelParams(3, -2, 2)
    with pytest.raises(DomainError):
        KernelParams(3, 2, 0)
    with pytest.raises(DomainError):
        Kernel(KernelParams(2, 0, 2))

    assert KernelParams(3, 2, 2).with_dim(3).dim == 3


def test_kernel_value():
    assert kernel_value(KERNEL, [1, 0]) == pytest.approx(-1/6)
    assert kernel_value(KERNEL, [0, 0]) == 0
    assert kernel_value(KERNEL, [0, 2]) == pytest.approx(8/3 - 2)


def test_singular_kernels():
    '''
    Negative repulsion is singular at 0, its gradient too for beta < 2
    '''

    singular = Kernel(KernelParams(2, -0.5, 2))
    rough = Kernel(KernelParams(3, 1, 2))

    with pytest.raises(SingularityError):
        kernel_value(singular, [0, 0])
    with pytest.raises(SingularityError):
        kernel_gradient(rough, [0, 0])

    assert np.array_equal(kernel_gradient(KERNEL, [0, 0]), [0, 0])
    assert kernel_value(rough, [0, 0]) == 0


def test_gradient_finite_difference(h=1e-6):
    point = np.array([0.3, -0.8])
    numeric = [(kernel_value(KERNEL, point + h*e) - kernel_value(KERNEL, point - h*e)) / (2*h)
               for e in np.eye(2)]

    assert np.allclose(kernel_gradient(KERNEL, point), numeric, atol=1e-8)


def test_pair_energy():
    '''
    Two half masses at distance d have energy W(d)/4
    '''

    measure = DiscreteMeasure([[0, 0], [0, 1.5]])

    assert interaction_energy(KERNEL, measure) == pytest.approx(kernel_value(KERNEL, [1.5, 0])/4)
    assert interaction_energy(KERNEL, DiscreteMeasure([[1, 1]])) == 0


@hyp_settings(max_examples=30, deadline=None)
@given(strategies.floats(min_value=0, max_value=2*np.pi),
       strategies.floats(min_value=-5, max_value=5),
       strategies.integers(min_value=0, max_value=1000))
def test_energy_invariance(angle, shift, seed):
    '''
    Energy is invariant under rotations and translations
    '''

    measure = generate_measure(12, 2, seed=seed, uniform=False)
    moved = measure.transformed(rotation_2d(angle)).translated([shift, -shift])

    assert interaction_energy(KERNEL, moved) == pytest.approx(interaction_energy(KERNEL, measure), abs=1e-12)


def test_energy_is_half_mean_potential():
    '''
    E = 1/2 int V dmu
    '''

    measure = generate_measure(9, 3, uniform=False)
    kernel = Kernel(KernelParams(3.5, 2, 3))
    potentials = potential_field(kernel, measure, measure.points)

    assert interaction_energy(kernel, measure) == pytest.approx(0.5*measure.weights @ potentials)


def test_field_gradient(h=1e-6):
    measure = generate_measure(6, 2)
    point = np.array([1.5, 0.2])

    numeric = [(potential_field(KERNEL, measure, point + h*e) - potential_field(KERNEL, measure, point - h*e)) / (2*h)
               for e in np.eye(2)]

    assert np.allclose(field_gradient(KERNEL, measure, point), numeric, atol=1e-8)
    assert field_gradient(KERNEL, measure, measure.points).shape == (6, 2)


def test_velocities_conserve_momentum():
    '''
    Pair forces cancel so the weighted velocities sum to zero
    '''

    measure = generate_measure(15, 3, uniform=False)
    velocities = particle_velocities(Kernel(KernelParams(3, 2, 3)), measure)

    assert np.allclose(measure.weights @ velocities, 0, atol=1e-14)


def test_velocities_match_field():
    '''
    With beta >= 2 the self term vanishes and v_i = -grad V(x_i)
    '''

    measure = generate_measure(7, 2)

    assert np.allclose(particle_velocities(KERNEL, measure),
                       -field_gradient(KERNEL, measure, measure.points))


def test_simplex_is_steady():
    '''
    Unit simplices are steady for (alpha, beta) = (4, 2)
    '''

    for n in (2, 3, 4):
        kernel = Kernel(KernelParams(4, 2, n))
        assert force_residual(kernel, simplex_measure(n)) < 1e-14


def test_collision_with_singular_repulsion():
    measure = DiscreteMeasure([[0, 0], [0, 0], [1, 0]])

    with pytest.raises(SingularityError):
        particle_velocities(Kernel(KernelParams(3, 1, 2)), measure)

    assert np.all(np.isfinite(particle_velocities(KERNEL, measure)))


if __name__ == '__main__':
    test_pair_energy()
    test_simplex_is_steady()
