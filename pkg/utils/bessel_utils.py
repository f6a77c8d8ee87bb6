"""
제1종 Bessel 함수 J_μ, 도함수, 양의 영점 계산 유틸리티 모듈

실수 차수 μ ≥ -1/2 에 대해 외부 특수함수 라이브러리 없이 계산한다.
구간별로 거듭제곱 급수, Miller 역방향 점화식, Hankel 점근 전개를 사용한다.
"""

import logging
import math
import threading
from typing import Dict, Union

import numpy as np

from models.errors import ConvergenceError, DomainError
from models.profiles import RadialGrid

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Lanczos 근사 계수 (g=7, n=9)
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

SERIES_LIMIT = 8.0
_SERIES_TERMS = 48
_HANKEL_TERMS = 60

_zero_cache: Dict[float, np.ndarray] = {}
_zero_lock = threading.Lock()


def gamma(x: ArrayLike) -> ArrayLike:
    """
    Lanczos 근사로 감마 함수 계산 (x < 1/2 은 반사 공식)

    Args:
        x: 실수 (0 또는 음의 정수 제외)

    Returns:
        Γ(x)
    """
    arr = np.asarray(x, dtype=float)
    if np.any((arr <= 0) & (arr == np.round(arr))):
        raise DomainError(f"감마 함수의 극점입니다: {x}")

    out = np.empty_like(arr)
    reflect = arr < 0.5
    if np.any(reflect):
        z = arr[reflect]
        out[reflect] = np.pi / (np.sin(np.pi * z) * _lanczos(1.0 - z))
    if np.any(~reflect):
        out[~reflect] = _lanczos(arr[~reflect])

    return float(out) if np.ndim(x) == 0 else out


def _lanczos(z: np.ndarray) -> np.ndarray:
    z = z - 1.0
    acc = np.full_like(z, _LANCZOS_COEF[0])
    for i in range(1, len(_LANCZOS_COEF)):
        acc = acc + _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * np.exp(-t) * acc


def _check_order(mu: float) -> float:
    mu = float(mu)
    if not np.isfinite(mu) or mu < -0.5:
        raise DomainError(f"Bessel 차수는 -1/2 이상이어야 합니다: {mu}")
    return mu


def _check_positive(eta: ArrayLike) -> np.ndarray:
    arr = np.asarray(eta, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError("η 는 양의 유한한 실수여야 합니다.")
    return arr


def _series_reduced(mu: float, x: np.ndarray) -> np.ndarray:
    """Σ (-x²/4)^k / (k! Γ(k+μ+1)), Neumaier 보정 합"""
    q = -0.25 * x * x
    term = np.full_like(x, 1.0 / gamma(mu + 1.0))
    total = term.copy()
    comp = np.zeros_like(x)
    for k in range(1, _SERIES_TERMS):
        term = term * q / (k * (k + mu))
        t = total + term
        big = np.abs(total) >= np.abs(term)
        comp += np.where(big, (total - t) + term, (term - t) + total)
        total = t
    return total + comp


def _bessel_miller(mu: float, x: np.ndarray) -> np.ndarray:
    """역방향 점화식과 (x/2)^μ 정규화 합으로 J_μ 계산"""
    xmax = float(np.max(x))
    m = int(xmax + 40.0 + 3.0 * math.sqrt(xmax))
    m += m % 2

    # 정규화 계수: k=0 은 Γ(μ+1), k≥1 은 (μ+2k) Γ(μ+k)/k!
    g = np.empty(m // 2 + 1)
    g[0] = gamma(mu + 1.0)
    g_k = g[0]
    for k in range(1, m // 2 + 1):
        if k > 1:
            g_k = g_k * (mu + k - 1) / k
        g[k] = (mu + 2 * k) * g_k

    upper = np.zeros_like(x)
    current = np.full_like(x, 1e-30)
    norm = g[m // 2] * current
    for n in range(m, 0, -1):
        lower = 2.0 * (mu + n) / x * current - upper
        upper, current = current, lower
        if (n - 1) % 2 == 0:
            norm = norm + g[(n - 1) // 2] * current
        big = np.abs(current) > 1e100
        if np.any(big):
            upper = np.where(big, upper * 1e-100, upper)
            current = np.where(big, current * 1e-100, current)
            norm = np.where(big, norm * 1e-100, norm)

    return (0.5 * x) ** mu * current / norm


def _bessel_hankel(mu: float, x: np.ndarray) -> np.ndarray:
    """큰 η 에 대한 Hankel 점근 전개 (항이 감소하는 동안만 합산)"""
    m4 = 4.0 * mu * mu
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    previous = np.abs(term)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, _HANKEL_TERMS):
        term = term * (m4 - (2 * k - 1) ** 2) / (8.0 * k * x)
        size = np.abs(term)
        active &= size <= previous
        contribution = np.where(active, term, 0.0)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q += sign * contribution
        else:
            p += sign * contribution
        previous = size
        if not np.any(active & (size > 1e-17)):
            break
    chi = x - (0.5 * mu + 0.25) * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def _asymptotic_start(mu: float) -> float:
    return max(25.0, 2.0 * mu * mu + 10.0)


def _bessel_j(mu: float, x: np.ndarray) -> np.ndarray:
    """검증 없이 배열 x > 0 에 대해 J_μ(x) 계산"""
    if mu == 0.5:
        return np.sqrt(2.0 / (np.pi * x)) * np.sin(x)
    if mu == -0.5:
        return np.sqrt(2.0 / (np.pi * x)) * np.cos(x)

    out = np.empty_like(x)
    series = x <= SERIES_LIMIT
    hankel = x >= _asymptotic_start(mu)
    miller = ~(series | hankel)
    if np.any(series):
        xs = x[series]
        out[series] = (0.5 * xs) ** mu * _series_reduced(mu, xs)
    if np.any(miller):
        out[miller] = _bessel_miller(mu, x[miller])
    if np.any(hankel):
        out[hankel] = _bessel_hankel(mu, x[hankel])
    return out


def _as_output(template, values: np.ndarray):
    return float(values) if np.ndim(template) == 0 else values


def bessel_j(mu: float, eta: ArrayLike) -> ArrayLike:
    """
    J_μ(η) 계산

    Args:
        mu: 차수 (μ ≥ -1/2)
        eta: 양의 실수 또는 배열

    Returns:
        J_μ(η) (입력과 같은 형태)
    """
    mu = _check_order(mu)
    x = np.atleast_1d(_check_positive(eta))
    return _as_output(eta, _bessel_j(mu, x).reshape(np.shape(eta)))


def bessel_j_prime(mu: float, eta: ArrayLike) -> ArrayLike:
    """
    J_μ'(η) = μ J_μ(η)/η - J_{μ+1}(η)

    Args:
        mu: 차수 (μ ≥ -1/2)
        eta: 양의 실수 또는 배열

    Returns:
        J_μ'(η)
    """
    mu = _check_order(mu)
    x = np.atleast_1d(_check_positive(eta))
    values = mu * _bessel_j(mu, x) / x - _bessel_j(mu + 1.0, x)
    return _as_output(eta, values.reshape(np.shape(eta)))


def bessel_j_over_power(mu: float, eta: ArrayLike) -> ArrayLike:
    """
    η^{-μ} J_μ(η), η = 0 에서는 극한값 2^{-μ}/Γ(μ+1)

    Args:
        mu: 차수
        eta: 0 이상의 실수 또는 배열

    Returns:
        η^{-μ} J_μ(η)
    """
    mu = _check_order(mu)
    arr = np.asarray(eta, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError("η 는 0 이상의 유한한 실수여야 합니다.")
    x = np.atleast_1d(arr).astype(float)
    out = np.empty_like(x)
    small = x <= SERIES_LIMIT
    if np.any(small):
        out[small] = 2.0 ** (-mu) * _series_reduced(mu, x[small])
    if np.any(~small):
        xl = x[~small]
        out[~small] = xl ** (-mu) * _bessel_j(mu, xl)
    return _as_output(eta, out.reshape(np.shape(eta)))


def _mcmahon(mu: float, k: int) -> float:
    return (k + 0.5 * mu - 0.25) * np.pi


def _refine_zeros(mu: float, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """브래킷 이분법 (폭 1e-6) 후 Newton 보정"""
    f_lo = _bessel_j(mu, lo)
    while np.max(hi - lo) > 1e-6:
        mid = 0.5 * (lo + hi)
        f_mid = _bessel_j(mu, mid)
        same = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(same, mid, lo)
        f_lo = np.where(same, f_mid, f_lo)
        hi = np.where(same, hi, mid)

    x = 0.5 * (lo + hi)
    left, right = lo - 1e-6, hi + 1e-6
    for _ in range(60):
        value = _bessel_j(mu, x)
        slope = mu * value / x - _bessel_j(mu + 1.0, x)
        step = value / slope
        x = x - step
        if np.any((x < left) | (x > right)):
            raise ConvergenceError(f"Bessel 영점 Newton 보정이 브래킷을 벗어났습니다 (μ={mu})")
        if np.all(np.abs(step) <= 1e-12 * np.maximum(x, 1.0)):
            return x
    raise ConvergenceError(f"Bessel 영점 Newton 보정이 60회 안에 수렴하지 않았습니다 (μ={mu})")


def _scan_zeros(mu: float, count: int) -> np.ndarray:
    end = _mcmahon(mu, count) + 2.0 * np.pi
    while True:
        grid = np.arange(0.05, end + 0.25, 0.25)
        values = _bessel_j(mu, grid)
        idx = np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)
        if idx.size >= count:
            idx = idx[:count]
            return _refine_zeros(mu, grid[idx], grid[idx + 1])
        logger.debug("zero scan for mu=%g found %d of %d, extending", mu, idx.size, count)
        end += (count - idx.size + 2) * np.pi


def bessel_zeros(mu: float, count: int) -> np.ndarray:
    """
    J_μ 의 처음 count 개 양의 영점 j_{μ,1} < ... < j_{μ,count}

    Args:
        mu: 차수 (μ ≥ -1/2)
        count: 영점 개수

    Returns:
        엄격히 증가하는 영점 배열
    """
    mu = _check_order(mu)
    if count < 1:
        return np.empty(0)
    k = np.arange(1, count + 1, dtype=float)
    if mu == 0.5:
        return k * np.pi
    if mu == -0.5:
        return (k - 0.5) * np.pi

    with _zero_lock:
        cached = _zero_cache.get(mu)
        if cached is None or cached.size < count:
            size = max(count, 2 * (cached.size if cached is not None else 0), 32)
            cached = _scan_zeros(mu, size)
            if np.any(np.diff(cached) <= 0):
                raise ConvergenceError(f"Bessel 영점이 증가 순서가 아닙니다 (μ={mu})")
            _zero_cache[mu] = cached
        return cached[:count].copy()


def bessel_zero(mu: float, k: int) -> float:
    """k 번째 양의 영점 j_{μ,k} (k ≥ 1)"""
    if k < 1:
        raise DomainError(f"영점 번호는 1 이상이어야 합니다: {k}")
    return float(bessel_zeros(mu, k)[k - 1])


def verify_recurrence(mu: float, grid) -> float:
    """
    점화식 J_μ(η) = (μ+1) J_{μ+1}(η)/η + J'_{μ+1}(η) 의 최대 잔차

    Args:
        mu: 차수
        grid: RadialGrid 또는 (0, 50] 범위의 배열

    Returns:
        격자 위 최대 잔차
    """
    eta = grid.eta if isinstance(grid, RadialGrid) else np.atleast_1d(np.asarray(grid, dtype=float))
    if np.any(eta <= 0) or np.any(eta > 50):
        raise DomainError("점화식 검증 격자는 (0, 50] 범위여야 합니다.")
    lhs = bessel_j(mu, eta)
    rhs = (mu + 1.0) * bessel_j(mu + 1.0, eta) / eta + bessel_j_prime(mu + 1.0, eta)
    return float(np.max(np.abs(lhs - rhs)))
