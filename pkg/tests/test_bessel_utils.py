import math

import numpy as np
import pytest
from scipy import special

from models.errors import DomainError
from models.profiles import RadialGrid
from utils.bessel_utils import (
    bessel_j,
    bessel_j_over_power,
    bessel_j_prime,
    bessel_zero,
    bessel_zeros,
    gamma,
    verify_recurrence
)


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.5, 7.3, 20.0, -0.5, -2.25])
def test_gamma_matches_math(x):
    assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-12)


def test_gamma_pole_is_domain_error():
    with pytest.raises(DomainError):
        gamma(-2.0)


@pytest.mark.parametrize("mu", [0.0, 0.25, 1.0, 1.5, 2.0, 3.0])
def test_bessel_j_matches_scipy(mu):
    eta = np.linspace(0.05, 60.0, 400)
    np.testing.assert_allclose(bessel_j(mu, eta), special.jv(mu, eta), atol=1e-10)


def test_half_order_closed_forms():
    eta = np.linspace(0.1, 50.0, 200)
    np.testing.assert_allclose(bessel_j(0.5, eta), np.sqrt(2.0 / (np.pi * eta)) * np.sin(eta), atol=1e-13)
    np.testing.assert_allclose(bessel_j(-0.5, eta), np.sqrt(2.0 / (np.pi * eta)) * np.cos(eta), atol=1e-13)
    assert bessel_j(-0.5, math.pi) == pytest.approx(-math.sqrt(2.0) / math.pi, abs=1e-13)


def test_scalar_in_scalar_out():
    assert isinstance(bessel_j(1.0, 2.0), float)
    assert bessel_j(1.0, np.array([2.0, 3.0])).shape == (2,)


def test_derivative_matches_scipy():
    eta = np.linspace(0.2, 30.0, 100)
    np.testing.assert_allclose(bessel_j_prime(1.5, eta), special.jvp(1.5, eta), atol=1e-10)


def test_over_power_limit_at_origin():
    mu = 1.5
    assert bessel_j_over_power(mu, 0.0) == pytest.approx(2.0 ** -mu / math.gamma(mu + 1.0), rel=1e-12)
    eta = np.array([1e-3, 1.0, 12.0])
    np.testing.assert_allclose(bessel_j_over_power(mu, eta), eta ** -mu * special.jv(mu, eta), rtol=1e-10)


@pytest.mark.parametrize("mu", [0.0, 1.0, 2.5])
def test_zeros_match_scipy(mu):
    zeros = bessel_zeros(mu, 10)
    assert np.all(np.diff(zeros) > 0)
    np.testing.assert_allclose(special.jv(mu, zeros), 0.0, atol=1e-10)
    if float(mu).is_integer():
        np.testing.assert_allclose(zeros, special.jn_zeros(int(mu), 10), rtol=1e-10)


def test_half_order_zeros_are_multiples_of_pi():
    k = np.arange(1, 21)
    np.testing.assert_allclose(bessel_zeros(0.5, 20), k * np.pi, atol=1e-10)
    assert bessel_zero(0.5, 3) == pytest.approx(3 * np.pi)


def test_zero_index_must_be_positive():
    with pytest.raises(DomainError):
        bessel_zero(0.0, 0)


@pytest.mark.parametrize("mu", [-0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0])
def test_recurrence_residual(mu):
    grid = RadialGrid(np.linspace(0.1, 50.0, 300))
    assert verify_recurrence(mu, grid) <= 1e-9


def test_invalid_inputs():
    with pytest.raises(DomainError):
        bessel_j(-0.75, 1.0)
    with pytest.raises(DomainError):
        bessel_j(0.0, 0.0)
    with pytest.raises(DomainError):
        verify_recurrence(0.0, [10.0, 60.0])


@pytest.mark.parametrize("mu", [-0.5, 0.0, 1.0, 2.5])
def test_scaled_bessel_is_bounded(mu):
    eta = np.linspace(1.0, 500.0, 5000)
    scaled = np.sqrt(eta) * np.abs(bessel_j(mu, eta))
    assert scaled.max() <= math.sqrt(2.0 / math.pi) + 0.3


@pytest.mark.parametrize("mu", [-0.5, 0.0, 0.5, 1.5, 2.5])
def test_sign_alternates_between_zeros(mu):
    zeros = np.concatenate([[0.0], bessel_zeros(mu, 12)])
    for k, (left, right) in enumerate(zip(zeros[:-1], zeros[1:])):
        eta = np.linspace(left, right, 42)[1:-1]
        if k == 0:
            eta = eta[eta > 1e-3]
        values = bessel_j(mu, eta)
        expected = 1.0 if k % 2 == 0 else -1.0
        assert np.all(np.sign(values) == expected), (mu, k)
