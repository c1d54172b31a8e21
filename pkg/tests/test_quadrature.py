'''
Tests for the quadrature rules
'''

import pytest
import numpy as np

from shellswarm.core.quadrature import tanh_sinh, gauss_panels
from shellswarm.errors import QuadratureError


def test_endpoint_singularities():
    '''
    tanh-sinh handles integrable singularities at the left end
    '''

    assert tanh_sinh(lambda x: x**-0.5, 0, 1) == pytest.approx(2, abs=1e-9)
    assert tanh_sinh(np.log, 0, 1) == pytest.approx(-1, abs=1e-9)
    assert tanh_sinh(lambda x: np.cbrt(x)**-2, 0, 8) == pytest.approx(6, abs=1e-9)


def test_vector_integrand():
    values = tanh_sinh(lambda x: np.array([np.ones_like(x), x, x**2]), 0, 2, tol=1e-12)

    assert values.shape == (3,)
    assert np.allclose(values, [2, 2, 8/3], atol=1e-11)


def test_empty_interval():
    assert tanh_sinh(np.exp, 1.5, 1.5) == 0


def test_node_budget():
    with pytest.raises(QuadratureError):
        tanh_sinh(lambda x: np.sin(1e4*x), 0, 1, tol=1e-14, max_nodes=64)


def test_gauss_panels():
    '''
    Composite Gauss-Legendre integrates oscillations resolved by the panels
    '''

    assert gauss_panels(np.sin, 0, np.pi, 1) == pytest.approx(2, abs=1e-14)
    assert gauss_panels(lambda x: np.cos(50*x), 0, 10, 40) == pytest.approx(np.sin(500)/50, abs=1e-12)


if __name__ == '__main__':
    test_endpoint_singularities()
