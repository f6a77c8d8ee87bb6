"""
선형 Cauchy 문제 (초기값 |x|^{-β}) 의 자기유사 프로파일 F_{N,β} 솔버
"""

import logging
import math
import warnings
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.interpolate import CubicSpline, PchipInterpolator

from models.errors import (
    AccuracyError,
    DomainError,
    HypothesisViolationError,
    MonotonicityWarning,
    PositivityRequiredError
)
from models.profiles import (
    EnvelopeConstants,
    NegativityWitness,
    PositivityReport,
    RadialDensity,
    RadialGrid,
    SelfSimilarProfile,
    WeightSpec
)
from solvers.kernel_solver import KernelSolver, sphere_area
from utils.bessel_utils import gamma
from utils.grid_utils import log_grid, parallel_map
from utils.quad_utils import alternating_sum, decompose_lobes, gauss_legendre, panel_rule, weighted_lobe_sum

logger = logging.getLogger(__name__)

VERIFY_RANGE = (1e-3, 1e3)
LARGE_ETA = 1e3
LARGE_ETA_CHECKS = (100.0, 200.0, 400.0)
SCAN_BLOCK = 200


def positivity_threshold(N: int) -> float:
    """차원별 해석적 양성 임계값 β₀"""
    if N == 1:
        return 7.0 / 16.0
    if N == 2:
        return 0.5
    return (N + 1) / 2.0


def _decay_weight(eta: float, exponent: float) -> Callable[[np.ndarray], np.ndarray]:
    def evaluator(s):
        return np.exp(-(s / eta) ** 4) * s ** exponent
    return evaluator


class LinearSolver:
    """F_{N,β}(η) = ∫₀^∞ E(s/η) s^{β-N/2} J_{(N-2)/2}(s) ds, E(s) = e^{-s⁴}"""

    def __init__(self, N: int, beta: float, tol: float = 1e-9, threads: int = 1,
                 allow_beta_N: bool = False, scan_points: int = 2000):
        """
        LinearSolver 초기화

        Args:
            N: 공간 차원
            beta: 초기값 지수 β ∈ (0, N)
            tol: F 절대 허용 오차
            threads: 격자 평가 스레드 수
            allow_beta_N: β = N 허용 여부 (음수 증인 계산용)
            scan_points: 격자 탐색 점 수
        """
        if int(N) != N or N < 1:
            raise DomainError(f"차원 N은 1 이상의 정수여야 합니다: {N}")
        upper_ok = beta <= N if allow_beta_N else beta < N
        if not (beta > 0 and upper_ok):
            raise DomainError(f"β 는 (0, {N}) 범위여야 합니다: {beta}")
        if tol <= 0:
            raise DomainError(f"tol 은 양수여야 합니다: {tol}")

        self.N = int(N)
        self.beta = float(beta)
        self.tol = tol
        self.threads = threads
        self.scan_points = scan_points
        self.order = (self.N - 2) / 2.0
        self.exponent = self.beta - (self.N + 1) / 2.0
        self.at_beta_N = self.beta == self.N
        self.limit_samples: Dict[float, float] = {}
        self._profiles: Dict[Tuple[float, float, int], SelfSimilarProfile] = {}

    # ------------------------------------------------------------------
    # 상수
    # ------------------------------------------------------------------
    @property
    def c(self) -> Optional[float]:
        """c_{N,β} = 2^{N/2-β} Γ((N-β)/2) / Γ(β/2)"""
        if self.at_beta_N:
            return None
        return 2.0 ** (self.N / 2.0 - self.beta) * gamma((self.N - self.beta) / 2.0) / gamma(self.beta / 2.0)

    def closed_form_A(self) -> Optional[float]:
        """A_{N,β} = 2^{β-N/2} Γ(β/2) / Γ((N-β)/2) = 1/c_{N,β}"""
        if self.at_beta_N:
            return None
        return 2.0 ** (self.beta - self.N / 2.0) * gamma(self.beta / 2.0) / gamma((self.N - self.beta) / 2.0)

    @property
    def A_tilde(self) -> float:
        """Ã_{N,β} = Γ(β/4) / (4 · 2^{(N-2)/2} Γ(N/2))"""
        return gamma(self.beta / 4.0) / (4.0 * 2.0 ** self.order * gamma(self.N / 2.0))

    def with_tol(self, tol: float) -> "LinearSolver":
        return LinearSolver(self.N, self.beta, tol=tol, threads=self.threads,
                            allow_beta_N=self.at_beta_N, scan_points=self.scan_points)

    # ------------------------------------------------------------------
    # F 평가
    # ------------------------------------------------------------------
    def _weight(self, eta: float, monotone: str = "unknown") -> WeightSpec:
        return WeightSpec(evaluator=_decay_weight(eta, self.exponent), monotone=monotone,
                          small_s_exponent=self.exponent, scale=eta)

    def F_value(self, eta: float) -> Tuple[float, float]:
        """
        F_{N,β}(η) 와 오차 추정

        Args:
            eta: η > 0

        Returns:
            (F 값, 오차 추정)
        """
        if not eta > 0:
            raise DomainError(f"η 는 양수여야 합니다: {eta}")
        lobe_tol = self.tol * 1e-2
        for _ in range(4):
            total, bound, d = weighted_lobe_sum(self.order, self._weight(eta), tol=lobe_tol)
            if d.tail_bound <= self.tol:
                return total, bound
            # 큰 lobe 합에서는 상대 중단 기준을 더 조인다
            lobe_tol *= max(1e-6, 1e-2 * self.tol / d.tail_bound)
        raise AccuracyError(
            f"F_{{{self.N},{self.beta:g}}}({eta:g}) 의 lobe 꼬리 {d.tail_bound:.3e} 가 허용 오차를 넘습니다")

    def F_values(self, etas) -> Tuple[np.ndarray, np.ndarray]:
        """여러 η 에 대한 (값, 오차) 배열"""
        results = parallel_map(self.F_value, np.atleast_1d(etas), self.threads)
        return np.array([r[0] for r in results]), np.array([r[1] for r in results])

    def recurrence_extra(self, eta: float) -> float:
        """4 η^{-4} ∫₀^∞ E(u/η) u^{β-N/2+3} J_{N/2}(u) du"""
        exponent = self.beta - self.N / 2.0 + 2.5
        weight = WeightSpec(evaluator=_decay_weight(eta, exponent), small_s_exponent=exponent)
        total, _, _ = weighted_lobe_sum(self.N / 2.0, weight, tol=self.tol * 1e-2)
        return 4.0 * eta ** -4 * total

    def recurrence_residual(self, eta: float) -> float:
        """
        F_{N,β}(η) - (N-β) F_{N+2,β}(η) - (추가항) 의 절댓값

        Args:
            eta: η > 0

        Returns:
            잔차
        """
        lhs, _ = self.F_value(eta)
        upper = LinearSolver(self.N + 2, self.beta, tol=self.tol, threads=self.threads)
        shifted, _ = upper.F_value(eta)
        rhs = (self.N - self.beta) * shifted + self.recurrence_extra(eta)
        return abs(lhs - rhs)

    def large_eta_limit(self) -> float:
        """
        η = 10³ 에서의 F 값으로 A_{N,β} 추정 (10², 2·10², 4·10² 에서 확인)

        Returns:
            A_{N,β} 수치값
        """
        etas = LARGE_ETA_CHECKS + (LARGE_ETA,)
        values, _ = self.F_values(np.array(etas))
        self.limit_samples = dict(zip(etas, values.tolist()))
        spread = np.abs(np.diff(values))
        logger.info("large-eta F_{%d,%g}: %s (successive differences %s)",
                    self.N, self.beta, np.array2string(values, precision=10), np.array2string(spread, precision=3))
        return float(values[-1])

    def limit_chain_residual(self) -> float:
        """|A_{N,β} - (N-β) A_{N+2,β}| (수치 극한끼리 비교)"""
        upper = LinearSolver(self.N + 2, self.beta, tol=self.tol, threads=self.threads)
        return abs(self.large_eta_limit() - (self.N - self.beta) * upper.large_eta_limit())

    # ------------------------------------------------------------------
    # 해
    # ------------------------------------------------------------------
    def linear_solution(self, x_norm, t):
        """
        [S(t)φ](x) = c |x|^{-β} F(|x| t^{-1/4}), x = 0 이면 c Ã t^{-β/4}

        Args:
            x_norm: |x| (스칼라 또는 배열)
            t: 시간 (양수)

        Returns:
            해의 값
        """
        if self.at_beta_N:
            raise DomainError("β = N 에서는 해 공식이 정의되지 않습니다.")
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr <= 0):
            raise DomainError(f"t 는 양수여야 합니다: {t}")
        x_arr, t_arr = np.broadcast_arrays(np.abs(np.asarray(x_norm, dtype=float)), t_arr)

        out = np.empty(x_arr.shape, dtype=float)
        flat_x, flat_t, flat_out = x_arr.ravel(), t_arr.ravel(), out.reshape(-1)
        origin = flat_x == 0
        flat_out[origin] = self.c * self.A_tilde * flat_t[origin] ** (-self.beta / 4.0)
        if np.any(~origin):
            eta = flat_x[~origin] * flat_t[~origin] ** -0.25
            values, _ = self.F_values(eta)
            flat_out[~origin] = self.c * flat_x[~origin] ** (-self.beta) * values
        return float(out) if out.ndim == 0 else out

    def build_profile(self, lo: float = 1e-3, hi: float = 1e3, count: int = 600) -> SelfSimilarProfile:
        """
        log 격자 위 F_{N,β} 표와 η^{-β}F 의 3차 스플라인 (log η 기준)

        Args:
            lo: 격자 하한
            hi: 격자 상한
            count: 점 수

        Returns:
            SelfSimilarProfile 객체
        """
        key = (lo, hi, count)
        if key in self._profiles:
            return self._profiles[key]
        eta = log_grid(lo, hi, count)
        values, errors = self.F_values(eta)
        spline = CubicSpline(np.log(eta), eta ** (-self.beta) * values)
        profile = SelfSimilarProfile(
            N=self.N,
            beta=self.beta,
            grid=RadialGrid(eta, values, dimension=self.N, beta=self.beta),
            errors=errors,
            A=self.closed_form_A(),
            A_tilde=self.A_tilde,
            c=self.c,
            spline=spline
        )
        self._profiles[key] = profile
        logger.info("self-similar profile N=%d beta=%g built on %d points", self.N, self.beta, count)
        return profile

    # ------------------------------------------------------------------
    # 양성 판정
    # ------------------------------------------------------------------
    def _lobe_certificates(self, order: float, weights: Sequence[WeightSpec]) -> Tuple[bool, float, str]:
        """검증 격자 각 η 에서 lobe 합 인증, (전체 인증 여부, 최소 합, 실패 설명)"""
        def certify(weight):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", MonotonicityWarning)
                d = decompose_lobes(order, weight, tol=self.tol * 1e-2)
            result = alternating_sum(d)
            return result.certified and bool(d.weight_checked), result.value

        results = parallel_map(certify, weights, self.threads)
        flags = [r[0] for r in results]
        minimum = float(min(r[1] for r in results))
        failed = [i for i, ok in enumerate(flags) if not ok]
        reason = "" if not failed else f"{len(failed)} of {len(flags)} grid points uncertified (first index {failed[0]})"
        return not failed, minimum, reason

    def _verification_grid(self) -> np.ndarray:
        return log_grid(VERIFY_RANGE[0], VERIFY_RANGE[1], 60)

    def _certify_lobe_monotonicity(self) -> Tuple[bool, float, str]:
        # W'/W = -4s³/η⁴ + (β-(N+1)/2)/s < 0 for β ≤ (N+1)/2
        if self.exponent > 0:
            return False, float("nan"), "weight exponent positive; W not monotone"
        weights = [self._weight(eta, monotone="strictly-decreasing") for eta in self._verification_grid()]
        return self._lobe_certificates(self.order, weights)

    def _certify_monotone_map(self) -> Tuple[bool, float, str]:
        """N=1: u ↦ (1-β+4u⁴) e^{-u⁴} u^{β-2} 의 비증가 확인 후 sin-lobe 인증"""
        beta = self.beta
        u = np.geomspace(1e-4, 10.0, 200001)
        # u · d/du log h(u)
        scaled = 16.0 * u ** 4 / (1.0 - beta + 4.0 * u ** 4) - 4.0 * u ** 4 + (beta - 2.0)
        worst = float(np.max(scaled))
        if worst > 1e-10:
            return False, float("nan"), f"monotone map increases (max u·(log h)' = {worst:.3e})"

        def weight_for(eta):
            def evaluator(s):
                x = s / eta
                return (1.0 - beta + 4.0 * x ** 4) * np.exp(-x ** 4) * s ** (beta - 2.0)
            return WeightSpec(evaluator=evaluator, monotone="strictly-decreasing",
                              small_s_exponent=beta - 2.0, scale=eta)

        weights = [weight_for(eta) for eta in self._verification_grid()]
        return self._lobe_certificates(0.5, weights)

    def grid_scan(self, points: Optional[int] = None) -> PositivityReport:
        """
        η ∈ [10⁻³, 10³] log 격자 탐색, 음수 후보는 tol/100 으로 재확인

        Args:
            points: 탐색 점 수 (기본: scan_points)

        Returns:
            witness-negative 또는 inconclusive 판정 PositivityReport
        """
        points = points or self.scan_points
        eta = log_grid(VERIFY_RANGE[0], VERIFY_RANGE[1], points)
        strict = self.with_tol(self.tol / 100.0)
        minimum = (np.inf, np.nan)
        rows = []

        for start in range(0, points, SCAN_BLOCK):
            block = eta[start:start + SCAN_BLOCK]
            values, errors = self.F_values(block)
            rows.append(pd.DataFrame({'eta': block, 'F_value': values, 'abs_err': errors}))
            i = int(np.argmin(values))
            if values[i] < minimum[0]:
                minimum = (float(values[i]), float(block[i]))

            for j in np.flatnonzero(values < -errors):
                confirmed, confirmed_err = strict.F_value(block[j])
                if confirmed < -confirmed_err:
                    logger.info("negative witness N=%d beta=%g at eta=%.6g: %.3e",
                                self.N, self.beta, block[j], confirmed)
                    return PositivityReport(
                        N=self.N, beta=self.beta, verdict="witness-negative", method="grid-scan",
                        beta_0=positivity_threshold(self.N),
                        details=f"negative value reconfirmed at tol {strict.tol:g}",
                        witness=(float(block[j]), float(confirmed)),
                        min_value=float(confirmed),
                        samples=pd.concat(rows, ignore_index=True))
                logger.warning("negative candidate at eta=%.6g not reconfirmed (%.3e ± %.1e)",
                               block[j], confirmed, confirmed_err)

        return PositivityReport(
            N=self.N, beta=self.beta, verdict="inconclusive", method="grid-scan",
            beta_0=positivity_threshold(self.N),
            details=f"no negative value on {points} log points; minimum at eta={minimum[1]:.6g}",
            min_value=minimum[0],
            samples=pd.concat(rows, ignore_index=True))

    def certify_positivity(self) -> PositivityReport:
        """
        F_{N,β} > 0 인증 또는 음수 증인 탐색

        N≥3, β ≤ (N+1)/2 는 lobe 단조성, N=2, β ≤ 1/2 는 F_{4,β+2} 를 이용한 미분 논법,
        N=1, β ≤ 7/16 은 단조 사상 논법을 쓰고 그 밖에는 격자 탐색으로 판정한다.

        Returns:
            PositivityReport 객체
        """
        beta_0 = positivity_threshold(self.N)
        if self.beta <= beta_0:
            if self.N >= 3:
                ok, minimum, reason = self._certify_lobe_monotonicity()
                method = "lobe-monotonicity"
            elif self.N == 2:
                upper = LinearSolver(4, self.beta + 2.0, tol=self.tol, threads=self.threads)
                ok, minimum, reason = upper._certify_lobe_monotonicity()
                ok = ok and self.closed_form_A() > 0 and self.A_tilde > 0
                method = "N2-derivative-trick"
            else:
                ok, minimum, reason = self._certify_monotone_map()
                method = "N1-monotone-map"

            if ok:
                logger.info("certified positive N=%d beta=%g via %s", self.N, self.beta, method)
                return PositivityReport(
                    N=self.N, beta=self.beta, verdict="certified-positive", method=method,
                    beta_0=beta_0, details="all verification grid points certified",
                    min_value=minimum)
            logger.warning("certificate %s failed for N=%d beta=%g: %s; falling back to grid scan",
                           method, self.N, self.beta, reason)

        return self.grid_scan()

    def scan_beta_threshold(self, beta_lo: float, beta_hi: float, resolution: float,
                            points: Optional[int] = None) -> Tuple[Optional[float], Optional[float], pd.DataFrame]:
        """
        격자 탐색 판정으로 β 이분 탐색

        Args:
            beta_lo: 하한 (0 < beta_lo)
            beta_hi: 상한 (beta_hi < N)
            resolution: 종료 간격
            points: β 당 탐색 점 수

        Returns:
            (가장 큰 양성 β, 가장 작은 음수 증인 β, β 별 판정 DataFrame)
        """
        if not (0 < beta_lo < beta_hi < self.N):
            raise DomainError(f"0 < beta_lo < beta_hi < N 이어야 합니다: {beta_lo}, {beta_hi}")
        if resolution <= 0:
            raise DomainError(f"resolution 은 양수여야 합니다: {resolution}")

        rows = []

        def verdict(beta):
            report = LinearSolver(self.N, beta, tol=self.tol, threads=self.threads,
                                  scan_points=self.scan_points).grid_scan(points)
            rows.append({
                'beta': beta,
                'verdict': report.verdict,
                'min_F': report.min_value,
                'witness_eta': report.witness[0] if report.witness else None
            })
            return report.verdict == "witness-negative"

        lo, hi = beta_lo, beta_hi
        lo_negative = verdict(lo)
        hi_negative = verdict(hi)
        if not lo_negative and hi_negative:
            while hi - lo > resolution:
                mid = 0.5 * (lo + hi)
                if verdict(mid):
                    hi = mid
                else:
                    lo = mid

        positive = None if lo_negative else lo
        negative = hi if hi_negative else None
        table = pd.DataFrame(rows).sort_values('beta', kind='mergesort').reset_index(drop=True)
        logger.info("beta threshold N=%d: positive up to %s, negative from %s", self.N, positive, negative)
        return positive, negative, table

    def negativity_witness(self) -> NegativityWitness:
        """
        F_{N,N}(η) = η^N f_N(η) < 0 인 η 를 f_N 의 첫 음수 구간에서 찾음

        Returns:
            NegativityWitness 객체
        """
        kernel = KernelSolver(self.N, tol=self.tol, threads=self.threads)
        zeros = kernel.sign_changes(20.0)
        if not zeros:
            raise AccuracyError(f"f_{self.N} 의 부호 변화를 찾지 못했습니다")
        right = zeros[1] if len(zeros) > 1 else zeros[0] + 2.0
        eta = np.linspace(zeros[0], right, 23)[1:-1]
        f, _ = kernel.f_values(eta)
        i = int(np.argmin(f))

        at_N = LinearSolver(self.N, float(self.N), tol=self.tol, threads=self.threads, allow_beta_N=True)
        value, _ = at_N.F_value(float(eta[i]))
        kernel_value = float(eta[i] ** self.N * f[i])
        difference = abs(value - kernel_value) / abs(kernel_value)
        if difference > 1e-6:
            logger.warning("F_{N,N} and eta^N f_N disagree at eta=%.6g: relative %.2e", eta[i], difference)
        return NegativityWitness(N=self.N, eta=float(eta[i]), value=float(value),
                                 kernel_value=kernel_value, relative_difference=difference)

    # ------------------------------------------------------------------
    # 포락선
    # ------------------------------------------------------------------
    def envelope_constants(self, require_lower: bool = True, verify_samples: int = 10000,
                           profile: Optional[SelfSimilarProfile] = None, seed: int = 0) -> EnvelopeConstants:
        """
        K_*/(|x|^β + t^{β/4}) ≤ S(t)φ ≤ K^*/(|x|^β + t^{β/4}) 상수 구성

        Args:
            require_lower: K_* 가 필요한지 여부 (음수 증인이면 PositivityRequiredError)
            verify_samples: 무작위 (x, t) 검증 표본 수
            profile: 사용할 프로파일 (없으면 [10⁻³, 10³] 600점)
            seed: 표본 난수 시드

        Returns:
            EnvelopeConstants 객체
        """
        if self.at_beta_N:
            raise DomainError("β = N 에서는 포락선을 정의하지 않습니다.")
        profile = profile or self.build_profile()
        eta = profile.grid.eta
        F = profile.values
        scaled = eta ** (-self.beta) * F
        A, A_tilde, c = profile.A, profile.A_tilde, profile.c

        outer, inner = eta >= 1.0, eta <= 1.0
        K1 = min(float(np.min(F[outer])), A / 2.0)
        K2 = min(float(np.min(scaled[inner])), A_tilde)
        U1 = max(float(np.max(np.abs(F[outer]))), A)
        U2 = max(float(np.max(np.abs(scaled[inner]))), A_tilde)

        combined = F * (1.0 + eta ** (-self.beta))
        sharp_upper = c * max(float(np.max(np.abs(combined))), A, A_tilde)
        K_star_upper = 2.0 * c * max(U1, U2) * (1.0 + 1e-3)

        K_star = sharp_lower = None
        if np.min(F) > 0:
            K_star = c * min(K1, K2) * (1.0 - 1e-3)
            sharp_lower = c * min(float(np.min(combined)), A, A_tilde)
        elif require_lower:
            report = self.certify_positivity()
            if report.verdict == "witness-negative":
                raise PositivityRequiredError(
                    f"N={self.N}, β={self.beta:g} 는 음수 증인 (η={report.witness[0]:.6g}) 이 있어 K_* 가 없습니다")
            K1 = K2 = None

        verified = 0
        if verify_samples:
            rng = np.random.default_rng(seed)
            x = 10.0 ** rng.uniform(-2.0, 2.0, verify_samples)
            t = 10.0 ** rng.uniform(-2.0, 2.0, verify_samples)
            weighted = profile.solution(x, t) * (x ** self.beta + t ** (self.beta / 4.0))
            upper_ok = weighted <= K_star_upper
            lower_ok = weighted >= K_star if K_star is not None else np.ones_like(upper_ok)
            if not (np.all(upper_ok) and np.all(lower_ok)):
                bad = int(np.flatnonzero(~(upper_ok & lower_ok))[0])
                raise AccuracyError(
                    f"포락선 검증 실패: x={x[bad]:.4g}, t={t[bad]:.4g}, 가중값={weighted[bad]:.6g}")
            verified = verify_samples

        logger.info("envelope N=%d beta=%g: K_*=%s K^*=%.6g", self.N, self.beta, K_star, K_star_upper)
        return EnvelopeConstants(N=self.N, beta=self.beta, K_star=K_star, K_star_upper=K_star_upper,
                                 K1=K1 if K_star is not None else None, K2=K2 if K_star is not None else None,
                                 sharp_lower=sharp_lower, sharp_upper=sharp_upper, verified_samples=verified)

    # ------------------------------------------------------------------
    # Riesz 평활
    # ------------------------------------------------------------------
    def riesz_smoothing(self, density: RadialDensity, x_norm, t: float) -> np.ndarray:
        """
        ∫ [S(t)φ](x - z) f(|z|) dz (반경 밀도 f 와 선형 해의 중첩)

        Args:
            density: 음이 아닌 반경 밀도
            x_norm: |x| (스칼라 또는 배열)
            t: 시간 (양수)

        Returns:
            중첩 적분 값
        """
        if t <= 0:
            raise DomainError(f"t 는 양수여야 합니다: {t}")
        q_max = self.N / (self.N - self.beta)
        if not (1.0 < density.q < q_max):
            raise DomainError(f"q 는 (1, {q_max:g}) 범위여야 합니다: {density.q}")

        x = np.atleast_1d(np.abs(np.asarray(x_norm, dtype=float)))
        if density.is_trivial:
            return np.zeros_like(x) if np.ndim(x_norm) else 0.0

        profile = self.build_profile()
        edges = density.radii
        if edges[0] > 0:
            edges = np.concatenate([[0.0], edges])
        r, w_r = panel_rule(edges[:-1], edges[1:], 8)
        radial = w_r * density.evaluate(r) * r ** (self.N - 1)

        values = np.empty_like(x)
        if self.N == 1:
            for i, xi in enumerate(x):
                u = profile.solution(np.abs(xi - r), t) + profile.solution(xi + r, t)
                values[i] = np.sum(radial * u)
        else:
            theta, w_theta = gauss_legendre(0.0, math.pi, 32)
            angular = sphere_area(self.N - 1) * w_theta * np.sin(theta) ** (self.N - 2)
            for i, xi in enumerate(x):
                distance = np.sqrt(np.maximum(
                    xi ** 2 + r[:, None] ** 2 - 2.0 * xi * r[:, None] * np.cos(theta)[None, :], 0.0))
                u = profile.solution(distance, t)
                values[i] = np.sum(radial * (u @ angular))

        return values if np.ndim(x_norm) else float(values[0])


def certify_radial_positivity(N: int, psi_s, psi_values, samples: Sequence[Tuple[float, float]],
                      psi_derivative=None, tol: float = 1e-9) -> PositivityReport:
    """
    ψ(s) = s^{(N-1)/2} F[φ](s) 가 양수이고 비증가인 반경 초기값의 양성 인증

    Args:
        N: 차원 (3 이상)
        psi_s: ψ 표본 위치 (엄격히 증가)
        psi_values: ψ 표본 값
        samples: 평가할 (|x|, t) 목록
        psi_derivative: ψ' 표본 (없으면 차분으로 확인)
        tol: lobe 허용 오차

    Returns:
        PositivityReport 객체
    """
    if N < 3:
        raise DomainError(f"이 판정은 N ≥ 3 에서만 적용됩니다: {N}")
    s = np.asarray(psi_s, dtype=float)
    psi = np.asarray(psi_values, dtype=float)
    if s.shape != psi.shape or s.size < 2 or np.any(np.diff(s) <= 0) or s[0] <= 0:
        raise DomainError("ψ 표본 위치는 양수이며 엄격히 증가해야 합니다.")

    negative = np.flatnonzero(psi <= 0)
    if negative.size:
        raise HypothesisViolationError(f"ψ 가 양수가 아닙니다: s={s[negative[0]]:.6g}",
                                       condition="b", location=float(s[negative[0]]))
    if psi_derivative is not None:
        slope = np.asarray(psi_derivative, dtype=float)
        rising = np.flatnonzero(slope > 1e-12 * np.maximum(psi, 1.0))
        if rising.size:
            raise HypothesisViolationError(f"ψ' 가 양수입니다: s={s[rising[0]]:.6g}",
                                           condition="c", location=float(s[rising[0]]))
    else:
        rising = np.flatnonzero(psi[1:] > psi[:-1] * (1.0 + 1e-12))
        if rising.size:
            raise HypothesisViolationError(f"ψ 가 증가합니다: s={s[rising[0] + 1]:.6g}",
                                           condition="c", location=float(s[rising[0] + 1]))

    log_s, log_psi = np.log(s), np.log(psi)
    interpolant = PchipInterpolator(log_s, log_psi, extrapolate=False)
    slope_lo = (log_psi[1] - log_psi[0]) / (log_s[1] - log_s[0])
    slope_hi = (log_psi[-1] - log_psi[-2]) / (log_s[-1] - log_s[-2])

    def psi_of(u):
        lu = np.log(u)
        inside = interpolant(np.clip(lu, log_s[0], log_s[-1]))
        below = log_psi[0] + slope_lo * (lu - log_s[0])
        above = log_psi[-1] + slope_hi * (lu - log_s[-1])
        return np.exp(np.where(lu < log_s[0], below, np.where(lu > log_s[-1], above, inside)))

    order = (N - 2) / 2.0
    monotone = "strictly-decreasing" if N == 3 else "non-increasing"
    rows = []
    for x, t in samples:
        if x <= 0 or t <= 0:
            raise DomainError(f"(|x|, t) 는 양수여야 합니다: ({x}, {t})")

        def evaluator(u, x=x, t=t):
            return psi_of(u / x) * np.exp(-t * u ** 4 / x ** 4)

        weight = WeightSpec(evaluator=evaluator, monotone=monotone, small_s_exponent=slope_lo, scale=x)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", MonotonicityWarning)
            d = decompose_lobes(order, weight, tol=tol)
        result = alternating_sum(d)
        prefactor = x ** (-(N + 1) / 2.0)
        rows.append({
            'x': x, 't': t,
            'value': prefactor * result.value,
            'abs_err': prefactor * result.error_bound,
            'certified': bool(result.certified and d.weight_checked)
        })

    table = pd.DataFrame(rows)
    if table['certified'].all():
        verdict, witness, details = "certified-positive", None, "every sample certified by lobe monotonicity"
    elif (table['value'] < -table['abs_err']).any():
        worst = table.loc[table['value'].idxmin()]
        verdict, witness, details = "witness-negative", (float(worst['x']), float(worst['value'])), "negative sample"
    else:
        verdict, witness, details = "inconclusive", None, "some samples uncertified"
    return PositivityReport(N=N, beta=float("nan"), verdict=verdict, method="lobe-monotonicity",
                            beta_0=(N + 1) / 2.0, details=details, witness=witness,
                            min_value=float(table['value'].min()), samples=table)
