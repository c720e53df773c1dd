"""Adaptive Gauss-Legendre engine against analytically known integrals."""

import math

import numpy as np
import pytest

from ohmicity.quadrature import (QuadratureError, adaptive_gauss,
                                 adaptive_rule, power_law_gauss,
                                 power_law_rule)


def test_smooth_integral_matches_closed_form():
    val = adaptive_gauss(np.exp, 0.0, 1.0, tol=1e-12)
    assert abs(val - (np.e - 1.0)) < 1e-12


def test_oscillatory_integral():
    # int_0^10 cos(7x) dx = sin(70) / 7
    val = adaptive_gauss(lambda x: np.cos(7.0 * x), 0.0, 10.0, tol=1e-12)
    assert abs(val - np.sin(70.0) / 7.0) < 1e-10


def test_vector_valued_integrand():
    def f(x):
        return np.stack([x, x**2], axis=-1)

    val = adaptive_gauss(f, 0.0, 2.0, tol=1e-12)
    assert np.allclose(val, [2.0, 8.0 / 3.0], atol=1e-12)


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        adaptive_gauss(np.exp, 1.0, 1.0)


def test_nonconvergence_raises():
    # step discontinuity never satisfies the panel tolerance at depth 2
    f = lambda x: np.where(x < np.sqrt(2.0) / 2.0, 0.0, 1.0)
    with pytest.raises(QuadratureError):
        adaptive_gauss(f, 0.0, 1.0, tol=1e-14, max_depth=2)


def test_rule_weights_integrate_constants():
    x, w = adaptive_rule(np.sin, 0.0, 3.0, tol=1e-10)
    assert abs(w.sum() - 3.0) < 1e-12
    assert np.all(x >= 0.0) and np.all(x <= 3.0)


def test_power_law_endpoint():
    # int_0^1 x**(-1/2) dx = 2, integrand singular at 0
    val = power_law_gauss(lambda x: 1.0 / np.sqrt(x), 1.0, 0.5, tol=1e-12)
    assert abs(val - 2.0) < 1e-10


def test_power_law_with_smooth_factor():
    # int_0^1 x**(0.3 - 1) * exp(x) dx, reference from a series expansion:
    # sum_k 1 / (k! * (k + 0.3))
    ref = sum(1.0 / (math.factorial(k) * (k + 0.3)) for k in range(30))
    val = power_law_gauss(lambda x: x**(-0.7) * np.exp(x), 1.0, 0.3,
                          tol=1e-12)
    assert abs(val - ref) < 1e-10


def test_power_law_invalid_exponent():
    with pytest.raises(ValueError):
        power_law_rule(np.exp, 1.0, 0.0)


def test_power_law_nodes_stay_positive():
    x, _ = power_law_rule(lambda x: x**(-0.9), 1.0, 0.1, tol=1e-8)
    assert np.all(x > 0.0)
