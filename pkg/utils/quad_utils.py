"""
진동 Bessel 적분의 lobe 분해 구적 유틸리티 모듈

∫₀^∞ W(s) s^{1/2} J_μ(s) ds 를 J_μ 영점 사이 구간(lobe) 별로 적분하고
교대 합과 양성 인증 여부를 계산한다.
"""

import logging
import warnings
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from models.errors import DomainError, MonotonicityWarning, NonIntegrableWeightError
from models.profiles import AlternatingSum, Lobe, LobeDecomposition, WeightSpec
from utils.bessel_utils import bessel_j, bessel_zeros

logger = logging.getLogger(__name__)

# Gauss-Kronrod 15점 노드/가중치 (양수 쪽, 마지막이 0)
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# 7점 Gauss 가중치 (_XGK[1], _XGK[3], _XGK[5], 0)
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[:-1][::-1]])
_KRONROD_W = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[:-1][::-1]])
_GAUSS_W = np.zeros(15)
for _i in (1, 3, 5):
    _GAUSS_W[_i] = _WG[(_i - 1) // 2]
    _GAUSS_W[14 - _i] = _WG[(_i - 1) // 2]
_GAUSS_W[7] = _WG[3]

_EPS = np.finfo(float).eps
# 이보다 작은 패널 오차는 비정규화 수 영역의 반올림 잡음
_ERROR_FLOOR = 1e-300
_NEGLIGIBLE_LOBE = 1e-250
_MAX_PANELS = 400000
_FIRST_LOBE_PANELS = 24


def gauss_kronrod(func: Callable[[np.ndarray], np.ndarray], a: np.ndarray,
                  b: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    패널별 G7-K15 적분

    Args:
        func: 벡터화된 피적분 함수
        a: 패널 왼쪽 끝 배열
        b: 패널 오른쪽 끝 배열

    Returns:
        (Kronrod 적분값, 오차 추정 |K-G|, |f| 적분값)
    """
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    nodes = center[:, None] + half[:, None] * _NODES[None, :]
    values = np.asarray(func(nodes), dtype=float)
    kronrod = half * (values @ _KRONROD_W)
    gauss = half * (values @ _GAUSS_W)
    absolute = np.abs(half) * (np.abs(values) @ _KRONROD_W)
    return kronrod, np.abs(kronrod - gauss), absolute


def adaptive_integrate(func: Callable[[np.ndarray], np.ndarray], a, b, rel_tol: float,
                       abs_tol: float = 0.0, max_rounds: int = 40, shared: bool = False
                       ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    여러 구간을 한꺼번에 적응적으로 이분하며 적분

    Args:
        func: 벡터화된 피적분 함수
        a: 구간 왼쪽 끝 배열
        b: 구간 오른쪽 끝 배열
        rel_tol: 구간별 상대 허용 오차
        abs_tol: 절대 허용 오차
        max_rounds: 최대 이분 횟수
        shared: True면 모든 구간이 하나의 적분을 이루는 것으로 보고
            전체 |f| 적분에 대한 오차 예산을 구간 수로 나눠 함께 허용

    Returns:
        (적분값, 오차 추정, 수렴 여부) 배열
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    groups = a.size
    width = b - a

    values = np.zeros(groups)
    errors = np.zeros(groups)
    accepted_abs = np.zeros(groups)
    converged = np.ones(groups, dtype=bool)

    lo, hi, gid = a.copy(), b.copy(), np.arange(groups)
    for round_no in range(max_rounds + 1):
        if lo.size == 0:
            break
        k, err, absolute = gauss_kronrod(func, lo, hi)
        if not np.all(np.isfinite(k)):
            bad = gid[~np.isfinite(k)]
            converged[bad] = False
            k = np.where(np.isfinite(k), k, 0.0)
            err = np.where(np.isfinite(err), err, np.inf)

        estimate = accepted_abs + np.bincount(gid, weights=absolute, minlength=groups)
        fraction = np.where(width[gid] > 0, (hi - lo) / np.where(width[gid] > 0, width[gid], 1.0), 1.0)
        target = np.maximum(rel_tol * estimate[gid], abs_tol) * fraction
        if shared:
            target = np.maximum(target, rel_tol * estimate.sum() * fraction / groups)
        done = (err <= target) | (err <= 50.0 * _EPS * absolute) | (err <= _ERROR_FLOOR)
        done |= (hi - lo) <= 1e-15 * np.maximum(np.abs(lo), 1e-300)
        if round_no == max_rounds or lo.size > _MAX_PANELS:
            converged[np.unique(gid[~done])] = False
            done[:] = True

        np.add.at(values, gid[done], k[done])
        np.add.at(errors, gid[done], err[done])
        np.add.at(accepted_abs, gid[done], absolute[done])

        keep = ~done
        mid = 0.5 * (lo[keep] + hi[keep])
        lo, hi, gid = (np.concatenate([lo[keep], mid]),
                       np.concatenate([mid, hi[keep]]),
                       np.concatenate([gid[keep], gid[keep]]))

    return values, errors, converged


def integrate(func: Callable[[np.ndarray], np.ndarray], a: float, b: float,
              rel_tol: float = 1e-10, panels: int = 1) -> Tuple[float, float]:
    """[a, b] 한 구간 적분 (값, 오차)"""
    edges = np.linspace(a, b, panels + 1)
    values, errors, _ = adaptive_integrate(func, edges[:-1], edges[1:], rel_tol)
    return float(values.sum()), float(errors.sum())


@lru_cache(maxsize=None)
def _legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def gauss_legendre(a: float, b: float, order: int, panels: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """
    [a, b] 를 균등 패널로 나눈 복합 Gauss-Legendre 노드와 가중치

    Args:
        a: 왼쪽 끝
        b: 오른쪽 끝
        order: 패널당 노드 수
        panels: 패널 수

    Returns:
        (노드, 가중치)
    """
    edges = np.linspace(a, b, panels + 1)
    return panel_rule(edges[:-1], edges[1:], order)


def panel_rule(lo: np.ndarray, hi: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """임의 패널 목록에 대한 Gauss-Legendre 노드와 가중치 (평탄화)"""
    x, w = _legendre(order)
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    half = 0.5 * (hi - lo)
    nodes = (0.5 * (hi + lo))[:, None] + half[:, None] * x[None, :]
    weights = half[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()


def geometric_panels(lo: float, hi: float, ratio: float = 4.0) -> Tuple[np.ndarray, np.ndarray]:
    """hi 에서 lo 쪽으로 비율 ratio 로 줄어드는 패널 경계"""
    edges = [hi]
    while edges[-1] / ratio > lo:
        edges.append(edges[-1] / ratio)
    edges.append(lo)
    edges = np.array(edges[::-1])
    return edges[:-1], edges[1:]


def truncation_point(eta: float, tol: float) -> float:
    """
    e^{-(s/η)⁴} < tol 이 되는 절단점 s_max = η (ln 1/tol)^{1/4}

    Args:
        eta: 가중치 척도 η > 0
        tol: 허용 오차 (0 < tol < 1)

    Returns:
        s_max
    """
    if not (0.0 < tol < 1.0):
        raise DomainError(f"tol 은 (0, 1) 범위여야 합니다: {tol}")
    if not eta > 0:
        raise DomainError(f"η 는 양수여야 합니다: {eta}")
    return float(eta * np.log(1.0 / tol) ** 0.25)


def lobe_integrand(order: float, weight: Callable[[np.ndarray], np.ndarray]) -> Callable:
    """W(s) s^{1/2} J_μ(s)"""
    def integrand(s: np.ndarray) -> np.ndarray:
        return weight(s) * np.sqrt(s) * bessel_j(order, s)
    return integrand


def _first_lobe(order: float, integrand: Callable, j1: float, rel_tol: float) -> Tuple[float, float]:
    """[0, j_{μ,1}] 를 0 쪽으로 모이는 기하 패널로 적분하고 남은 부분은 거듭제곱 꼬리로 외삽"""
    hi = j1 * 4.0 ** -np.arange(_FIRST_LOBE_PANELS)
    lo = hi / 4.0
    values, errors, converged = adaptive_integrate(integrand, lo, hi, rel_tol, shared=True)
    total = float(values.sum())
    if not np.all(converged):
        # 예산을 못 맞춘 패널은 오차가 유한하고 합에 비해 작으면 그대로 받아들인다
        stalled = ~converged
        if not np.all(np.isfinite(errors)) or errors[stalled].sum() > max(np.sqrt(rel_tol) * abs(total),
                                                                           _ERROR_FLOOR):
            raise NonIntegrableWeightError(
                f"첫 번째 lobe 적분이 수렴하지 않습니다 (μ={order}, 패널 {np.flatnonzero(stalled).tolist()})")
        logger.debug("first lobe mu=%g: panels %s stalled at error %.3e", order,
                     np.flatnonzero(stalled).tolist(), float(errors[stalled].sum()))

    if abs(values[-1]) <= max(1e-300, 1e-3 * rel_tol * abs(total)):
        tail = 0.0
    else:
        tail = power_tail(values)
        if tail is None:
            raise NonIntegrableWeightError(
                f"s → 0 근처에서 가중치가 적분 불가능합니다 (μ={order}, 패널 비율 {values[-1] / values[-2]:.4g})")

    return total + tail, float(errors.sum()) + 1e-3 * abs(tail)


def check_monotone(weight: WeightSpec, lobes) -> Optional[bool]:
    """
    선언된 단조성을 log 격자와 lobe 끝점에서 확인

    Args:
        weight: 가중치
        lobes: 계산된 Lobe 리스트

    Returns:
        선언이 없으면 None, 위반이 없으면 True
    """
    if weight.monotone == "unknown":
        return None
    upper = max(lobes[-1].right, 1.0)
    s = np.geomspace(min(1e-6, 1e-3 * lobes[0].right), upper, 2000)
    w = np.asarray(weight(s), dtype=float)
    increase = w[1:] > w[:-1] * (1.0 + 1e-12) + 1e-300
    if np.any(increase):
        at = float(s[1:][increase][0])
        _warn_monotone(f"단조 감소로 선언된 가중치가 s={at:.6g} 근처에서 증가합니다")
        return False

    if weight.monotone == "strictly-decreasing":
        left = np.array([lobe.left if lobe.left > 0 else 1e-3 * lobe.right for lobe in lobes])
        right = np.array([lobe.right for lobe in lobes])
        w_left = np.asarray(weight(left), dtype=float)
        w_right = np.asarray(weight(right), dtype=float)
        visible = w_left > 1e-300
        flat = visible & (w_left - w_right < 1e-14 * w_left)
        if np.any(flat):
            k = int(np.flatnonzero(flat)[0])
            _warn_monotone(f"lobe {k} 에서 가중치의 엄격한 감소가 관측되지 않습니다")
            return False
    return True


def _warn_monotone(message: str) -> None:
    logger.warning(message)
    warnings.warn(message, MonotonicityWarning, stacklevel=4)


def decompose_lobes(order: float, weight, k_max: int = 5000, tol: float = 1e-10,
                    min_lobes: int = 2) -> LobeDecomposition:
    """
    ∫₀^∞ W(s) s^{1/2} J_μ(s) ds 의 lobe 분해

    Args:
        order: Bessel 차수 μ
        weight: WeightSpec 또는 벡터화된 가중치 함수
        k_max: 최대 lobe 수
        tol: lobe 상대 허용 오차 겸 중단 기준
        min_lobes: 최소 lobe 수

    Returns:
        LobeDecomposition 객체
    """
    if tol <= 0:
        raise DomainError(f"tol 은 양수여야 합니다: {tol}")
    if not isinstance(weight, WeightSpec):
        weight = WeightSpec(evaluator=weight)
    if weight.small_s_exponent <= -1.5 - order:
        logger.warning("small-s exponent %.4g <= -3/2 - mu; relying on first-lobe convergence",
                       weight.small_s_exponent)

    integrand = lobe_integrand(order, weight)
    rel_tol = min(tol, 1e-10)
    k_max = max(k_max, min_lobes)

    zeros = bessel_zeros(order, 17)
    first_value, first_error = _first_lobe(order, integrand, zeros[0], rel_tol)
    lobes = [Lobe(0, 0.0, float(zeros[0]), first_value, abs(first_value), first_error)]
    running = abs(first_value)

    chunk = 16
    done = len(lobes) >= k_max or (min_lobes <= 1 and running == 0.0)
    while not done:
        start = len(lobes)
        stop = min(start + chunk, k_max)
        zeros = bessel_zeros(order, stop + 1)
        left, right = zeros[start - 1:stop - 1], zeros[start:stop]
        values, errors, _ = adaptive_integrate(integrand, left, right, rel_tol)
        for i, value in enumerate(values):
            k = start + i
            lobes.append(Lobe(k, float(left[i]), float(right[i]), float(value), abs(float(value)),
                              float(errors[i])))
            running += abs(value)
            if len(lobes) >= min_lobes and abs(value) <= tol * running:
                done = True
                break
        if len(lobes) >= k_max:
            done = True
        chunk = min(2 * chunk, 512)

    checked = check_monotone(weight, lobes)
    tail = lobes[-1].abs_integral
    logger.debug("decompose_lobes mu=%g: %d lobes, tail %.3e", order, len(lobes), tail)
    return LobeDecomposition(order=order, lobes=lobes, tail_bound=tail, weight_checked=checked)


def lobe_integral(order: float, weight: Callable, left: float, right: float,
                  rel_tol: float = 1e-12) -> Tuple[float, float]:
    """한 구간 [left, right] 위의 W(s) s^{1/2} J_μ(s) 적분 (값, 오차)"""
    return integrate(lobe_integrand(order, weight), left, right, rel_tol)


def alternating_sum(d: LobeDecomposition) -> AlternatingSum:
    """
    lobe 교대 합과 양성 인증

    M_k 가 엄격히 감소하고 부호가 번갈아 바뀌며 첫 쌍 M_0 - M_1 이 오차보다 크면
    짝지은 합 Σ(M_{2k} - M_{2k+1}) 이 양수이므로 인증한다.

    Args:
        d: lobe 분해 (2개 이상)

    Returns:
        AlternatingSum(값, 오차 상한, 인증 여부)
    """
    if len(d.lobes) < 2:
        raise DomainError("교대 합에는 lobe 가 2개 이상 필요합니다.")

    signed = d.signed
    magnitudes = d.magnitudes
    errors = d.errors
    value = float(np.sum(signed))
    error_bound = float(d.tail_bound + np.sum(errors))

    # 반올림 잡음 아래의 꼬리 lobe 는 tail_bound 로만 반영
    floor = max(_NEGLIGIBLE_LOBE, 1e-3 * _EPS * magnitudes[0])
    signs = np.sign(signed[magnitudes > floor])
    alternating = bool(np.all(signs[:-1] != signs[1:]))
    first_pair = magnitudes[0] - magnitudes[1] > errors[0] + errors[1]
    decreasing = d.is_decreasing(strict=True, floor=floor)
    certified = bool(decreasing and alternating and first_pair and signed[0] > 0 and value > 0)
    return AlternatingSum(value=value, error_bound=error_bound, certified=certified)


def weighted_lobe_sum(order: float, weight, tol: float, k_max: int = 5000,
                      min_lobes: int = 2) -> Tuple[float, float, LobeDecomposition]:
    """decompose_lobes 후 부호 있는 합과 오차 상한 반환"""
    d = decompose_lobes(order, weight, k_max=k_max, tol=tol, min_lobes=min_lobes)
    total = float(np.sum(d.signed))
    return total, float(d.tail_bound + np.sum(d.errors)), d


def power_tail(values: np.ndarray) -> Optional[float]:
    """기하 감소하는 마지막 두 패널 값으로 남은 합 외삽 (발산하면 None)"""
    last, before = values[-1], values[-2]
    if last == 0:
        return 0.0
    ratio = last / before if before != 0 else np.inf
    if not (0.0 < ratio < 1.0):
        return None
    return float(last * ratio / (1.0 - ratio))
