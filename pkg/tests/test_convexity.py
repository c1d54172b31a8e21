'''
Tests for F_alpha on neutral measures and convexity of the power energy
'''

import logging

import pytest
import numpy as np
from hypothesis import given, strategies
from hypothesis import settings as hyp_settings

from shellswarm.acceptance import reference_neutral_measure
from shellswarm.convexity import (NeutralMeasure, f_alpha_form, random_neutral_measure, expected_sign,
                                  sign_classify, segment_energy, segment_second_derivative,
                                  midpoint_energy_gap, fourier_side)
from shellswarm.core.measure import SignedMeasure
from shellswarm.equilibria import RingConfig, ring_measure
from shellswarm.errors import DomainError

from tests.data import generate_measure, rotation_2d


def test_reference_values():
    '''
    Hand-computed values on 1/2 (d_-1 + d_1) - 1/2 (d_-1/2 + d_1/2)
    '''

    rho = reference_neutral_measure()

    assert f_alpha_form(rho, 1) == pytest.approx(-0.5, abs=1e-14)
    assert f_alpha_form(rho, 2) == pytest.approx(0, abs=1e-14)
    assert f_alpha_form(rho, 3) == pytest.approx(1, abs=1e-14)
    assert f_alpha_form(rho, 4) == pytest.approx(3.375, abs=1e-14)


def test_neutral_validation():
    with pytest.raises(DomainError):
        NeutralMeasure([0, 1], [0.5, -0.4], dim=1)
    with pytest.raises(DomainError):
        NeutralMeasure([0, 1], [0.5, -0.5], dim=1)
    with pytest.raises(DomainError):
        f_alpha_form(reference_neutral_measure(), 0)

    assert f_alpha_form(NeutralMeasure.zero(2), 3) == 0


@hyp_settings(max_examples=50, deadline=None)
@given(strategies.integers(min_value=1, max_value=4),
       strategies.integers(min_value=0, max_value=10**6))
def test_random_neutral_measure(n, seed):
    '''
    Zero mass, zero first moment, both signs and unit positive mass
    '''

    rho = random_neutral_measure(n, np.random.default_rng(seed))

    assert rho.dim == n
    assert abs(rho.weights.sum()) < 1e-12
    assert np.all(np.abs(rho.weights @ rho.points) < 1e-12)
    assert rho.weights[rho.weights > 0].sum() == pytest.approx(1)
    assert rho.weights.min() < 0 < rho.weights.max()
    assert np.all(np.linalg.norm(rho.points, axis=1) <= 1)


def test_homogeneity_and_invariance(alpha=3.5, factor=1.7, angle=0.9):
    rho = random_neutral_measure(2, np.random.default_rng(12))
    value = f_alpha_form(rho, alpha)

    assert f_alpha_form(rho.dilated(factor), alpha) == pytest.approx(factor**alpha * value)
    assert f_alpha_form(rho.transformed(rotation_2d(angle)), alpha) == pytest.approx(value)


@pytest.mark.parametrize('alpha,expected', [(1, 'strictly negative'), (2, 'zero'),
                                            (3, 'strictly positive'), (4, 'nonnegative')])
def test_sign_classify(alpha, expected):
    report = sign_classify(alpha, 2, trials=25, seed=4)

    assert report['expected'] == expected
    assert report['consistent']
    assert report['trials'] == 25

    if alpha != 4:
        assert report['verdict'] == expected


def test_sign_classify_reproducible():
    assert sign_classify(2.5, 3, trials=10, seed=1) == sign_classify(2.5, 3, trials=10, seed=1)

    with pytest.raises(DomainError):
        expected_sign(4.5)


def test_quartic_degeneracy():
    '''
    F_4 vanishes on differences of measures sharing their second moments
    '''

    radius = 0.7
    rho = NeutralMeasure.from_signed(SignedMeasure(ring_measure(RingConfig(3, radius)),
                                                   ring_measure(RingConfig(4, radius))))

    assert abs(f_alpha_form(rho, 4)) < 1e-12


def test_segment_convexity(caplog, alpha=3):
    '''
    Along segments of centered measures the energy is a convex parabola
    '''

    m0 = generate_measure(6, 2, seed=1).centered()
    m1 = generate_measure(6, 2, seed=2, uniform=False).centered()

    logging.getLogger('<convexity>').propagate = True
    with caplog.at_level(logging.WARNING, logger='<convexity>'):
        curvature = segment_second_derivative(m0, m1, alpha)

    values = [segment_energy(m0, m1, alpha, t) for t in (0, 0.25, 0.5, 0.75, 1)]
    fitted = np.polyfit([0, 0.25, 0.5, 0.75, 1], values, 2)

    assert curvature > 0
    assert 'differs' not in caplog.text
    assert 2*fitted[0] == pytest.approx(curvature, rel=1e-8)
    assert midpoint_energy_gap(m0, m1, alpha) == pytest.approx(curvature/8)


def test_concave_below_two(alpha=1.5):
    m0 = generate_measure(5, 1, seed=3).centered()
    m1 = generate_measure(5, 1, seed=4).centered()

    assert segment_second_derivative(m0, m1, alpha) < 0
    assert midpoint_energy_gap(m0, m1, alpha) < 0


@pytest.mark.parametrize('alpha', [1, 2.5, 3, 3.5])
def test_fourier_side(alpha):
    '''
    The Fourier representation reproduces F_alpha in 1D
    '''

    for rho in (reference_neutral_measure(), random_neutral_measure(1, np.random.default_rng(9))):
        direct = f_alpha_form(rho, alpha)
        assert fourier_side(rho, alpha) == pytest.approx(direct, rel=1e-4)


def test_fourier_side_domain():
    with pytest.raises(DomainError):
        fourier_side(random_neutral_measure(2, np.random.default_rng(0)), 3)
    with pytest.raises(DomainError):
        fourier_side(reference_neutral_measure(), 2)

    assert fourier_side(NeutralMeasure.zero(1), 3) == 0


if __name__ == '__main__':
    test_reference_values()
    test_fourier_side(3)
