"""
쌍조화 열핵 프로파일 f_N 계산 솔버
"""

import logging
import math
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.interpolate import CubicSpline
from sklearn.linear_model import LinearRegression

from models.errors import AccuracyError, DomainError
from models.profiles import KernelProfile, RadialGrid, WeightSpec
from utils.bessel_utils import bessel_j_over_power, gamma
from utils.grid_utils import parallel_map
from utils.quad_utils import gauss_legendre, weighted_lobe_sum

logger = logging.getLogger(__name__)

# 질량/Fourier 검사용 적분 구간 [0, MASS_ETA_MAX]
MASS_ETA_MAX = 20.0
DECAY_WINDOW = (5.0, 15.0)


def sphere_area(dimension: int) -> float:
    """단위 구면 S^{N-1} 의 넓이 2π^{N/2}/Γ(N/2)"""
    return 2.0 * math.pi ** (dimension / 2.0) / gamma(dimension / 2.0)


class KernelSolver:
    """f_N(η) = η^{-N} ∫₀^∞ e^{-(s/η)⁴} s^{N/2} J_{(N-2)/2}(s) ds 계산 클래스"""

    def __init__(self, N: int, tol: float = 1e-9, threads: int = 1):
        """
        KernelSolver 초기화

        Args:
            N: 공간 차원 (1 이상)
            tol: f_N 절대 허용 오차
            threads: 격자 평가 스레드 수
        """
        if int(N) != N or N < 1:
            raise DomainError(f"차원 N은 1 이상의 정수여야 합니다: {N}")
        if tol <= 0:
            raise DomainError(f"tol 은 양수여야 합니다: {tol}")
        self.N = int(N)
        self.tol = tol
        self.threads = threads
        self.order = (self.N - 2) / 2.0
        self.alpha = (2.0 * math.pi) ** (-self.N / 2.0)
        self._mass_nodes: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]] = None
        self._decay: Optional[Tuple[float, float]] = None
        self._companions: Dict[Tuple[int, float], "KernelSolver"] = {}

    def _weight(self, eta: float) -> WeightSpec:
        exponent = (self.N - 1) / 2.0

        def evaluator(s):
            return np.exp(-(s / eta) ** 4) * s ** exponent

        return WeightSpec(evaluator=evaluator, monotone="unknown", small_s_exponent=exponent, scale=eta)

    def small_eta_limit(self) -> float:
        """η → 0 극한 2^{-(N-2)/2} Γ(N/4) / (4 Γ(N/2))"""
        return 2.0 ** (-self.order) * gamma(self.N / 4.0) / (4.0 * gamma(self.N / 2.0))

    def f_value(self, eta: float) -> Tuple[float, float]:
        """
        f_N(η) 와 오차 추정

        Args:
            eta: η ≥ 0 (0 이면 극한값)

        Returns:
            (f_N(η), 오차 추정)
        """
        eta = abs(float(eta))
        if eta == 0.0:
            return self.small_eta_limit(), 0.0

        total, bound, d = weighted_lobe_sum(self.order, self._weight(eta), tol=self.tol * 1e-2)
        scale = eta ** (-self.N)
        if scale * d.tail_bound > self.tol:
            raise AccuracyError(
                f"f_{self.N}({eta:g}) 의 lobe 꼬리 {scale * d.tail_bound:.3e} 가 허용 오차 {self.tol:g} 를 넘습니다")
        return scale * total, scale * bound

    def f_profile(self, eta: float) -> float:
        """f_N(η) 값"""
        if eta < 0:
            raise DomainError(f"η 는 0 이상이어야 합니다: {eta}")
        return self.f_value(eta)[0]

    def f_values(self, etas) -> Tuple[np.ndarray, np.ndarray]:
        """여러 η 에 대한 (값, 오차) 배열"""
        results = parallel_map(self.f_value, np.atleast_1d(etas), self.threads)
        return np.array([r[0] for r in results]), np.array([r[1] for r in results])

    def kernel_value(self, x_norm, t):
        """
        G(x,t) = α_N t^{-N/4} f_N(|x| t^{-1/4})

        Args:
            x_norm: |x| (스칼라 또는 배열)
            t: 시간 (양수)

        Returns:
            G(x,t)
        """
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr <= 0):
            raise DomainError(f"t 는 양수여야 합니다: {t}")
        x_arr, t_arr = np.broadcast_arrays(np.abs(np.asarray(x_norm, dtype=float)), t_arr)
        eta = x_arr * t_arr ** -0.25
        values, _ = self.f_values(eta.ravel())
        out = self.alpha * t_arr ** (-self.N / 4.0) * values.reshape(eta.shape)
        return float(out) if out.ndim == 0 else out

    def _quadrature_nodes(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """[0, 20] 복합 Gauss-Legendre 노드, 가중치, f 값 (캐시)"""
        if self._mass_nodes is None:
            nodes, weights = gauss_legendre(0.0, MASS_ETA_MAX, 16, panels=int(MASS_ETA_MAX))
            values, _ = self.f_values(nodes)
            self._mass_nodes = (nodes, weights, values)
        return self._mass_nodes

    def mass(self, t: float = 1.0) -> float:
        """
        ∫_{R^N} G(x,t) dx (반경 적분)

        Args:
            t: 시간 (양수)

        Returns:
            질량 (이론값 1)
        """
        if t <= 0:
            raise DomainError(f"t 는 양수여야 합니다: {t}")
        eta, weights, f = self._quadrature_nodes()
        scale = t ** 0.25
        r = eta * scale
        g = self.alpha * t ** (-self.N / 4.0) * f
        return float(sphere_area(self.N) * np.sum(weights * scale * g * r ** (self.N - 1)))

    def fourier_symbol_residual(self, t: float, xi_grid) -> pd.DataFrame:
        """
        반경 Fourier 변환 F[G(·,t)](ξ) 와 (2π)^{-N/2} e^{-ξ⁴t} 비교

        Args:
            t: 시간 (양수)
            xi_grid: ξ ≥ 0 배열

        Returns:
            N, t, xi, symbol, exact, residual 컬럼 DataFrame
        """
        if t <= 0:
            raise DomainError(f"t 는 양수여야 합니다: {t}")
        xi = np.atleast_1d(np.asarray(xi_grid, dtype=float))
        eta, weights, f = self._quadrature_nodes()
        scale = t ** 0.25
        r = eta * scale
        g = self.alpha * t ** (-self.N / 4.0) * f
        kernel = bessel_j_over_power(self.order, xi[:, None] * r[None, :])
        symbol = (kernel * (weights * scale * g * r ** (self.N - 1))[None, :]).sum(axis=1)
        exact = self.alpha * np.exp(-xi ** 4 * t)
        return pd.DataFrame({
            'N': self.N,
            't': t,
            'xi': xi,
            'symbol': symbol,
            'exact': exact,
            'residual': np.abs(symbol - exact)
        })

    def fit_decay_constants(self) -> Tuple[float, float]:
        """
        η ∈ [5, 15] 에서 |f_N(η)| ≤ c₁ exp(-c₂ η^{4/3}) 상수 추정

        |f_N| 의 극대점에 대해 log|f_N| 를 η^{4/3} 로 선형 회귀하여 c₂ 를 정하고,
        모든 표본을 덮도록 c₁ 을 정한 뒤 1.5배 여유를 둔다.

        Returns:
            (c1, c2)
        """
        if self._decay is not None:
            return self._decay

        eta = np.arange(DECAY_WINDOW[0], DECAY_WINDOW[1] + 1e-9, 0.05)
        values, errors = self.f_values(eta)
        size = np.abs(values)
        usable = size > 10.0 * errors
        x = eta ** (4.0 / 3.0)

        peaks = [i for i in range(1, eta.size - 1)
                 if usable[i] and size[i] >= size[i - 1] and size[i] >= size[i + 1]]
        if len(peaks) < 2:
            peaks = list(np.flatnonzero(usable))
        if len(peaks) < 2:
            raise AccuracyError(f"f_{self.N} 감쇠 상수를 추정할 표본이 부족합니다")

        # 극대점 회귀
        X = x[peaks].reshape(-1, 1)
        y = np.log(size[peaks])
        model = LinearRegression()
        model.fit(X, y)
        c2 = -float(model.coef_[0])
        if c2 <= 0:
            raise AccuracyError(f"f_{self.N} 감쇠 기울기가 양수가 아닙니다: c2={c2:g}")

        log_c1 = float(np.max(np.log(size[usable]) + c2 * x[usable]))
        c1 = 1.5 * math.exp(log_c1)
        logger.info("decay constants N=%d: c1=%.4g c2=%.4g (%d peaks)", self.N, c1, c2, len(peaks))
        self._decay = (c1, c2)
        return self._decay

    def companion(self, N: int, tol: Optional[float] = None) -> "KernelSolver":
        """같은 설정의 다른 차원 솔버 (캐시)"""
        key = (N, tol or self.tol)
        if key not in self._companions:
            self._companions[key] = KernelSolver(N, tol=key[1], threads=self.threads)
        return self._companions[key]

    def derivative_identity_residual(self, eta_grid) -> pd.DataFrame:
        """
        f_N'(η) = -η f_{N+2}(η) 의 중심 차분 잔차

        Args:
            eta_grid: RadialGrid 또는 (0, 10] 범위 배열

        Returns:
            N, eta, residual 컬럼 DataFrame
        """
        eta = eta_grid.eta if isinstance(eta_grid, RadialGrid) else np.atleast_1d(np.asarray(eta_grid, dtype=float))
        if np.any(eta <= 0) or np.any(eta > 10):
            raise DomainError("항등식 검사 격자는 (0, 10] 범위여야 합니다.")
        h = 1e-4
        tight = self.companion(self.N, tol=min(self.tol, 1e-12))
        upper = self.companion(self.N + 2, tol=min(self.tol, 1e-12))

        # f 는 짝함수이므로 η - h < 0 이면 |η - h| 사용
        plus, _ = tight.f_values(eta + h)
        minus, _ = tight.f_values(np.abs(eta - h))
        shifted, _ = upper.f_values(eta)
        residual = np.abs((plus - minus) / (2.0 * h) + eta * shifted)
        return pd.DataFrame({'N': self.N, 'eta': eta, 'residual': residual})

    def sign_changes(self, eta_max: float) -> List[float]:
        """
        (0, eta_max) 안의 f_N 부호 변화 위치 (간격 0.05 탐색 + 이분법 1e-8)

        Args:
            eta_max: 탐색 상한

        Returns:
            엄격히 증가하는 영점 리스트
        """
        if eta_max <= 0:
            raise DomainError(f"eta_max 는 양수여야 합니다: {eta_max}")
        eta = np.arange(0.05, eta_max, 0.05)
        if eta.size < 2:
            return []
        values, errors = self.f_values(eta)
        reliable = np.abs(values) > 10.0 * errors
        eta, values = eta[reliable], values[reliable]

        zeros = []
        for i in np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0):
            lo, hi = eta[i], eta[i + 1]
            f_lo = values[i]
            while hi - lo > 1e-8:
                mid = 0.5 * (lo + hi)
                f_mid = self.f_value(mid)[0]
                if np.sign(f_mid) == np.sign(f_lo):
                    lo, f_lo = mid, f_mid
                else:
                    hi = mid
            zeros.append(0.5 * (lo + hi))
        logger.info("f_%d sign changes on (0, %g): %d", self.N, eta_max, len(zeros))
        return zeros

    def build_profile(self, eta_max: float = 20.0) -> KernelProfile:
        """
        [0, 4] 선형(0.02) + [4, eta_max] 로그 격자 위 f_N 표와 3차 스플라인

        Args:
            eta_max: 표 상한

        Returns:
            KernelProfile 객체
        """
        linear = np.linspace(0.0, 4.0, 201)
        if eta_max > 4.0:
            eta = np.concatenate([linear, np.geomspace(4.0, eta_max, 101)[1:]])
        else:
            eta = linear[linear <= eta_max]
        values, errors = self.f_values(eta)
        c1, c2 = self.fit_decay_constants()
        spline = CubicSpline(eta, values)
        logger.info("kernel profile N=%d built on %d points", self.N, eta.size)
        return KernelProfile(
            dimension=self.N,
            grid=RadialGrid(eta, values, dimension=self.N),
            errors=errors,
            alpha=self.alpha,
            c1=c1,
            c2=c2,
            spline=spline
        )
