import math
import warnings

import numpy as np
import pytest

from models.errors import DomainError, MonotonicityWarning, NonIntegrableWeightError
from models.profiles import Lobe, LobeDecomposition, WeightSpec
from utils.quad_utils import (
    adaptive_integrate,
    alternating_sum,
    decompose_lobes,
    gauss_legendre,
    geometric_panels,
    integrate,
    lobe_integral,
    power_tail,
    truncation_point,
    weighted_lobe_sum
)


def _exp_weight(a, monotone="strictly-decreasing"):
    return WeightSpec(evaluator=lambda s: np.exp(-a * s), monotone=monotone)


def test_integrate_smooth():
    value, error = integrate(np.sin, 0.0, math.pi)
    assert value == pytest.approx(2.0, abs=1e-13)
    assert error < 1e-10


def test_adaptive_integrate_several_intervals():
    values, _, converged = adaptive_integrate(np.exp, [0.0, 1.0], [1.0, 2.0], rel_tol=1e-12)
    np.testing.assert_allclose(values, [math.e - 1.0, math.e ** 2 - math.e], rtol=1e-12)
    assert converged.all()




def _decomposition(signed, error=0.0):
    lobes = [Lobe(k=k, left=float(k), right=float(k + 1), signed_integral=float(v),
                  abs_integral=abs(float(v)), error=error) for k, v in enumerate(signed)]
    return LobeDecomposition(order=0.5, lobes=lobes, tail_bound=0.0)


def test_adaptive_integrate_subnormal_integrand_converges():
    values, errors, converged = adaptive_integrate(lambda s: 1e-310 * np.cos(s) * (1.0 + s),
                                                   [0.0, 1.0], [1.0, 2.0], rel_tol=1e-12)
    assert converged.all()
    assert np.all(np.isfinite(values)) and np.all(errors <= 1e-299)


def test_adaptive_integrate_shared_budget():
    func = lambda s: np.where(s < 1.0, 1.0, 1e-20 * np.sin(1e6 * s))
    values, _, converged = adaptive_integrate(func, [0.0, 1.0], [1.0, 2.0], rel_tol=1e-10, shared=True)
    assert converged.all()
    assert values.sum() == pytest.approx(1.0, rel=1e-10)


def test_gauss_legendre_exact_for_polynomials():
    nodes, weights = gauss_legendre(-1.0, 2.0, 5, panels=3)
    assert np.sum(weights * nodes ** 9) == pytest.approx((2.0 ** 10 - 1.0) / 10.0, rel=1e-12)


def test_geometric_panels_cover_interval():
    lo, hi = geometric_panels(1e-6, 0.5, ratio=2.0)
    assert lo[0] == 1e-6 and hi[-1] == 0.5
    np.testing.assert_array_equal(lo[1:], hi[:-1])
    assert np.all(hi > lo)


def test_truncation_point():
    assert truncation_point(1.0, 1e-18) == pytest.approx((18 * math.log(10)) ** 0.25, rel=1e-12)
    assert truncation_point(1.0, 1e-18) == pytest.approx(2.5373, abs=1e-4)
    assert math.exp(-truncation_point(1.0, 1e-18) ** 4) == pytest.approx(1e-18, rel=1e-9)
    with pytest.raises(DomainError):
        truncation_point(1.0, 2.0)
    with pytest.raises(DomainError):
        truncation_point(0.0, 1e-6)


def test_laplace_transform_of_sine_lobes():
    # ∫ e^{-as} s^{1/2} J_{1/2}(s) ds = √(2/π) / (1 + a²)
    a = 0.5
    total, bound, d = weighted_lobe_sum(0.5, _exp_weight(a), tol=1e-11)
    assert total == pytest.approx(math.sqrt(2.0 / math.pi) / (1.0 + a * a), abs=1e-9)
    assert bound < 1e-8
    assert d.weight_checked is True


def test_laplace_transform_order_zero():
    # ∫ e^{-as} J_0(s) ds = 1/√(1+a²)
    a = 0.75
    weight = WeightSpec(evaluator=lambda s: np.exp(-a * s) / np.sqrt(s), small_s_exponent=-0.5)
    total, _, _ = weighted_lobe_sum(0.0, weight, tol=1e-11)
    assert total == pytest.approx(1.0 / math.sqrt(1.0 + a * a), abs=1e-8)


@pytest.mark.parametrize("mu", [0.5, 1.5, 2.5])
@pytest.mark.parametrize("delta", [0.0, 0.25])
@pytest.mark.parametrize("eta", [1.0, 5.0])
def test_decreasing_weight_gives_decreasing_lobes(mu, delta, eta):
    weight = WeightSpec(evaluator=lambda s: np.exp(-(s / eta) ** 4) * s ** -delta,
                        monotone="strictly-decreasing", small_s_exponent=-delta)
    d = decompose_lobes(mu, weight, tol=1e-12, min_lobes=16)
    m = d.magnitudes[:16]
    visible = m[m > 1e-250]
    assert np.all(np.diff(visible) < 0)
    assert alternating_sum(d).certified


def test_alternating_sum_certifies_positive_total():
    d = decompose_lobes(0.5, _exp_weight(0.3), tol=1e-12)
    result = alternating_sum(d)
    assert result.certified
    assert result.value == pytest.approx(math.sqrt(2.0 / math.pi) / 1.09, abs=1e-9)
    assert result.error_bound >= d.tail_bound


def test_alternating_sum_needs_two_lobes():
    d = decompose_lobes(0.5, _exp_weight(0.3), tol=1e-12)
    d.lobes = d.lobes[:1]
    with pytest.raises(DomainError):
        alternating_sum(d)


def test_increasing_weight_declared_decreasing_warns():
    weight = WeightSpec(evaluator=lambda s: (1.0 + s) * np.exp(-0.5 * s), monotone="non-increasing")
    with pytest.warns(MonotonicityWarning):
        d = decompose_lobes(0.5, weight, tol=1e-10)
    assert d.weight_checked is False


def test_unknown_monotonicity_is_not_checked():
    with warnings.catch_warnings():
        warnings.simplefilter("error", MonotonicityWarning)
        d = decompose_lobes(0.5, _exp_weight(0.3, monotone="unknown"), tol=1e-10)
    assert d.weight_checked is None


def test_non_integrable_weight():
    weight = WeightSpec(evaluator=lambda s: np.exp(-s) * s ** -2.5, small_s_exponent=-2.5)
    with pytest.raises(NonIntegrableWeightError):
        decompose_lobes(0.5, weight, tol=1e-10)


def test_single_lobe_integral():
    value, _ = lobe_integral(0.5, lambda s: np.ones_like(s), 0.0, math.pi)
    assert value == pytest.approx(2.0 * math.sqrt(2.0 / math.pi), rel=1e-12)


def test_power_tail():
    assert power_tail(np.array([8.0, 4.0, 2.0, 1.0])) == pytest.approx(1.0)
    assert power_tail(np.array([1.0, 0.0])) == 0.0
    assert power_tail(np.array([1.0, 2.0])) is None


def test_alternating_sum_with_underflowing_lobe_products():
    # 이웃 lobe 곱은 0 으로 언더플로
    signed = [(-1.0) ** k * 1e-160 * 1e-3 ** k for k in range(12)]
    result = alternating_sum(_decomposition(signed))
    assert result.certified
    assert result.value > 0


def test_alternating_sum_rejects_same_sign_lobes():
    result = alternating_sum(_decomposition([1.0, -0.5, -0.25, 0.125]))
    assert not result.certified


def test_slight_increase_is_not_certified():
    d = _decomposition([1.0, -0.5, 0.5 * (1.0 + 1e-12), -0.25], error=1e-10)
    assert d.is_decreasing()
    assert not d.is_decreasing(strict=True)
    assert not alternating_sum(d).certified


def test_strict_decrease_ignores_lobes_below_floor():
    d = _decomposition([1.0, -0.5, 0.25, 0.0, 0.0])
    assert d.is_decreasing(strict=True, floor=1e-250)
    assert not _decomposition([1.0, 0.0, 0.25]).is_decreasing(strict=True, floor=1e-250)
