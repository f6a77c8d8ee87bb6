"""
반선형 문제 ∂t u + Δ²u = |u|^{p-1}u, u(0) = ε|x|^{-β} 의 자기유사 Picard 솔버

β = 4/(p-1) 이면 Duhamel 사상이 자기유사 장 u = t^{-β/4} W(|x| t^{-1/4}) 를
보존하므로 반경 프로파일 W 하나에 대한 고정점 문제로 줄어든다.
"""

import copy
import dataclasses
import logging
import math
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.fft import fht, fhtoffset, ifht
from scipy.interpolate import CubicSpline
from sklearn.linear_model import LinearRegression

from models.errors import DomainError, NoConvergenceError, NormOverflowError, QuadratureError
from models.profiles import HReport, PicardResult, ProblemSpec, SemilinearEnvelopes, WeightedField
from solvers.kernel_solver import KernelSolver, sphere_area
from solvers.linear_solver import LinearSolver
from utils.grid_utils import parallel_map
from utils.quad_utils import gauss_legendre, geometric_panels, panel_rule, power_tail

logger = logging.getLogger(__name__)

GRID_SIZE = 1024
R_RANGE = (1e-10, 1e10)
# σ → 1 끝에서 해석적으로 처리하는 폭
END_WIDTH = 1e-14
TRANSFORM_TOL = 1e-6
# 치우친 FFTLog 는 가우시안 검사에서 10⁻⁵ 수준 오차를 보여 q = 0 으로 고정
TRANSFORM_BIAS = 0.0


class SemilinearSolver:
    """자기유사 변수에서 Duhamel 고정점 방정식을 푸는 클래스"""

    def __init__(self, spec: ProblemSpec, threads: int = 1, n: int = GRID_SIZE,
                 nonlinearity_off: bool = False, linear_tol: float = 1e-9):
        """
        SemilinearSolver 초기화

        Args:
            spec: 문제 설정 (N, p, ε, tol, max_iters)
            threads: 승수 계산 스레드 수
            n: 로그 격자 점 수
            nonlinearity_off: True 면 비선형항을 0 으로 둔다 (선형 일관성 검사용)
            linear_tol: 선형 프로파일 허용 오차
        """
        self.spec = spec
        self.N = spec.N
        self.p = spec.p
        self.beta = spec.beta
        self.threads = threads
        self.nonlinearity_off = nonlinearity_off
        self.mu = (self.N - 2) / 2.0

        self.r = np.geomspace(R_RANGE[0], R_RANGE[1], n)
        self.dln = math.log(R_RANGE[1] / R_RANGE[0]) / (n - 1)
        self.bias = TRANSFORM_BIAS
        self.offset = fhtoffset(self.dln, self.mu, bias=self.bias)
        self.k = np.exp(self.offset) / self.r[::-1]
        self._check_transform()

        self.linear_solver = LinearSolver(self.N, self.beta, tol=linear_tol, threads=threads)
        self.profile = self.linear_solver.build_profile(1e-5, 1e3, 300)
        self.linear = self.profile.c * self.profile.scaled(self.r)
        self._sigma_rule = self._build_sigma_rule()
        self._K_upper: Optional[float] = None

    def with_epsilon(self, epsilon: float) -> "SemilinearSolver":
        """ε 만 바꾼 솔버 (격자와 선형 프로파일 공유)"""
        other = copy.copy(self)
        other.spec = dataclasses.replace(self.spec, epsilon=epsilon)
        return other

    # ------------------------------------------------------------------
    # Hankel 변환
    # ------------------------------------------------------------------
    def forward(self, values: np.ndarray) -> np.ndarray:
        """F[f](ξ) = ξ^{-(N-2)/2} ∫ s^{N/2} f(s) J_{(N-2)/2}(ξs) ds (k 격자)"""
        a = self.r ** (self.N / 2.0) * values
        return self.k ** (-self.N / 2.0) * fht(a, self.dln, self.mu, offset=self.offset, bias=self.bias)

    def inverse(self, values: np.ndarray) -> np.ndarray:
        """forward 의 역변환 (r 격자)"""
        A = self.k ** (self.N / 2.0) * values
        return self.r ** (-self.N / 2.0) * ifht(A, self.dln, self.mu, offset=self.offset, bias=self.bias)

    def _check_transform(self) -> None:
        gauss = np.exp(-self.r ** 2 / 2.0)
        transformed = self.forward(gauss)
        window = (self.k >= 1e-3) & (self.k <= 10.0)
        symbol_err = float(np.max(np.abs(transformed[window] - np.exp(-self.k[window] ** 2 / 2.0))))
        back = self.inverse(transformed)
        window = (self.r >= 1e-3) & (self.r <= 10.0)
        round_trip = float(np.max(np.abs(back[window] - gauss[window])))
        logger.debug("hankel check N=%d: symbol %.2e, round trip %.2e", self.N, symbol_err, round_trip)
        if symbol_err > TRANSFORM_TOL or round_trip > TRANSFORM_TOL:
            raise QuadratureError(
                f"Hankel 변환 검사 실패 (N={self.N}): 가우시안 오차 {symbol_err:.2e}, 왕복 오차 {round_trip:.2e}")

    # ------------------------------------------------------------------
    # Duhamel 승수
    # ------------------------------------------------------------------
    def _build_sigma_rule(self) -> Dict[str, np.ndarray]:
        """σ ∈ (0, 1/2] 은 σ = w^{1/a}/2 치환, σ ∈ [1/2, 1) 은 1-σ 기하 패널"""
        a = (self.N - self.beta) / 4.0
        w, w_weights = gauss_legendre(0.0, 1.0, 20)
        head_sigma = 0.5 * w ** (1.0 / a)
        head_weights = w_weights * 0.5 ** a / a

        lo, hi = geometric_panels(END_WIDTH, 0.5, ratio=2.0)
        gap, gap_weights = panel_rule(lo, hi, 8)
        tail_sigma = 1.0 - gap
        tail_weights = gap_weights * tail_sigma ** (a - 1.0)
        return {
            'head_sigma': head_sigma, 'head_weights': head_weights,
            'tail_gap': gap, 'tail_sigma': tail_sigma, 'tail_weights': tail_weights
        }

    def multiplier(self, H_hat: np.ndarray) -> np.ndarray:
        """
        m(k) = ∫₀¹ σ^{(N-β)/4-1} Ĥ(k σ^{1/4}) e^{-(1-σ)k⁴} dσ

        자기유사 Duhamel 항의 Fourier 프로파일이다.

        Args:
            H_hat: k 격자 위 F_p(W) 의 변환

        Returns:
            k 격자 위 m(k)
        """
        log_k = np.log(self.k)
        spline = CubicSpline(log_k, H_hat)
        rule = self._sigma_rule

        def H_at(arg):
            out = np.where(arg < log_k[0], H_hat[0], 0.0)
            inside = (arg >= log_k[0]) & (arg <= log_k[-1])
            out[inside] = spline(arg[inside])
            return out

        def rows(index):
            lk = log_k[index][:, None]
            k4 = self.k[index][:, None] ** 4
            head = H_at(lk + 0.25 * np.log(rule['head_sigma'])[None, :])
            head = head * np.exp(-(1.0 - rule['head_sigma'])[None, :] * k4)
            tail = H_at(lk + 0.25 * np.log(rule['tail_sigma'])[None, :])
            tail = tail * np.exp(-rule['tail_gap'][None, :] * k4)
            end = H_hat[index] * -np.expm1(-END_WIDTH * k4[:, 0]) / k4[:, 0]
            return head @ rule['head_weights'] + tail @ rule['tail_weights'] + end

        chunks = np.array_split(np.arange(self.k.size), max(self.threads, 1))
        return np.concatenate(parallel_map(rows, chunks, self.threads))

    def nonlinearity(self, values: np.ndarray) -> np.ndarray:
        """F_p(W) = |W|^{p-1} W"""
        if self.nonlinearity_off:
            return np.zeros_like(values)
        return np.abs(values) ** (self.p - 1.0) * values

    # ------------------------------------------------------------------
    # Picard
    # ------------------------------------------------------------------
    def field(self, values: np.ndarray, correction: Optional[np.ndarray] = None) -> WeightedField:
        return WeightedField(self.r, values, self.beta, linear=self.spec.epsilon * self.linear,
                             correction=correction if correction is not None else np.zeros_like(self.r))

    def initial_field(self) -> WeightedField:
        """u₀ = ε S(t)φ"""
        return self.field(self.spec.epsilon * self.linear)

    def duhamel_apply(self, v: WeightedField) -> WeightedField:
        """
        Φ[v] = ε S(t)φ + ∫₀^t S(t-s) F_p(v(s)) ds 의 자기유사 프로파일

        Args:
            v: 같은 r 격자 위의 자기유사 장

        Returns:
            Φ[v] (correction 에 Duhamel 항 보관)
        """
        if v.eta.shape != self.r.shape or not np.allclose(v.eta, self.r, rtol=1e-12, atol=0.0):
            raise DomainError("입력 장은 솔버의 r 격자 위에 있어야 합니다.")

        H = self.nonlinearity(v.values)
        if np.any(H != 0):
            correction = self.inverse(self.multiplier(self.forward(H)))
        else:
            correction = np.zeros_like(self.r)
        values = self.spec.epsilon * self.linear + correction

        linear_norm = v.norm_of(self.spec.epsilon * self.linear)
        if not np.all(np.isfinite(values)):
            raise NormOverflowError("Duhamel 출력에 NaN 또는 무한대가 있습니다 (ε 가 너무 크거나 격자가 거칠 수 있음)")
        result = self.field(values, correction)
        bound = 10.0 * max(v.weighted_norm, linear_norm)
        if result.weighted_norm > bound:
            raise NormOverflowError(
                f"Duhamel 출력 노름 {result.weighted_norm:.4g} 가 입력 상한의 10배 {bound:.4g} 를 넘습니다")
        return result

    def ball_radius(self) -> float:
        """Picard 공의 반지름 2εK^*"""
        if self._K_upper is None:
            envelope = self.linear_solver.envelope_constants(require_lower=False, verify_samples=0,
                                                             profile=self.profile)
            self._K_upper = envelope.K_star_upper
        return 2.0 * self.spec.epsilon * self._K_upper

    def picard_solve(self) -> PicardResult:
        """
        u₀ = ε S(t)φ 에서 시작하는 Picard 반복

        Returns:
            PicardResult (수렴한 장, 차이 기록, 공 포함 여부)
        """
        spec = self.spec
        ball = self.ball_radius()
        u = self.initial_field()
        in_ball = u.weighted_norm <= ball * (1.0 + 1e-12)
        previous = np.zeros_like(self.r)
        log = []

        for k in range(1, spec.max_iters + 1):
            u = self.duhamel_apply(u)
            diff = u.norm_of(u.correction - previous)
            previous = u.correction
            log.append(diff)
            in_ball = in_ball and u.weighted_norm <= ball * (1.0 + 1e-12)
            logger.info("picard N=%d p=%g eps=%g iter %d: diff=%.3e norm=%.6g",
                        self.N, self.p, spec.epsilon, k, diff, u.weighted_norm)
            if diff <= spec.tol and (k >= 2 or diff == 0.0):
                return PicardResult(field=u, contraction_log=log, converged=True,
                                    in_ball=in_ball, ball_radius=ball)

        ratio = log[-1] / log[-2] if len(log) > 1 and log[-2] > 0 else None
        raise NoConvergenceError(
            f"Picard 반복이 {spec.max_iters}회 안에 수렴하지 않았습니다 (마지막 차이 {log[-1]:.3e})",
            observed_ratio=ratio)

    def contraction_check(self, pairs: int = 20, seed: int = 0) -> pd.DataFrame:
        """
        공 안의 무작위 장 쌍에 대한 ‖Φ[v] - Φ[w]‖ / ‖v - w‖

        Args:
            pairs: 장 쌍 수
            seed: 난수 시드

        Returns:
            pair, ratio, image_norm, in_ball 컬럼 DataFrame
        """
        rng = np.random.default_rng(seed)
        base = self.spec.epsilon * self.linear
        log_r = np.log(self.r)
        ball = self.ball_radius()

        def perturbation():
            freq = rng.uniform(0.2, 2.0, 3)
            phase = rng.uniform(0.0, 2.0 * math.pi, 3)
            amp = rng.uniform(-1.0, 1.0, 3)
            g = np.sin(np.outer(log_r, freq) + phase) @ amp
            return 0.5 * g / max(float(np.max(np.abs(g))), 1e-300)

        rows = []
        for i in range(pairs):
            v = self.field(base * (1.0 + perturbation()))
            w = self.field(base * (1.0 + perturbation()))
            image_v, image_w = self.duhamel_apply(v), self.duhamel_apply(w)
            gap = v.norm_of(v.values - w.values)
            image_gap = v.norm_of(image_v.correction - image_w.correction)
            image_norm = max(image_v.weighted_norm, image_w.weighted_norm)
            rows.append({
                'pair': i,
                'ratio': image_gap / gap if gap > 0 else 0.0,
                'image_norm': image_norm,
                'in_ball': bool(image_norm <= ball * (1.0 + 1e-12))
            })
        table = pd.DataFrame(rows)
        logger.info("contraction N=%d p=%g eps=%g: max ratio %.3e", self.N, self.p,
                    self.spec.epsilon, table['ratio'].max())
        return table

    def find_epsilon0(self, lo: float = 1e-6, hi: float = 1.0, pairs: int = 5,
                      steps: int = 12, seed: int = 0) -> Optional[float]:
        """
        log ε 이분법으로 수축비 ≤ 1/2 와 공 불변성을 만족하는 가장 큰 ε 추정

        Returns:
            ε₀ (lo 에서도 실패하면 None)
        """
        def passes(epsilon):
            try:
                table = self.with_epsilon(epsilon).contraction_check(pairs, seed)
            except NormOverflowError:
                return False
            return bool((table['ratio'] <= 0.5).all() and table['in_ball'].all())

        if not passes(lo):
            return None
        if passes(hi):
            return hi
        log_lo, log_hi = math.log(lo), math.log(hi)
        for _ in range(steps):
            mid = 0.5 * (log_lo + log_hi)
            if passes(math.exp(mid)):
                log_lo = mid
            else:
                log_hi = mid
        return math.exp(log_lo)

    def verify_envelopes(self, u: WeightedField) -> SemilinearEnvelopes:
        """
        εM_* ≤ (η^β + 1) W(η) ≤ εM^* 의 격자 상수

        Args:
            u: 수렴한 장

        Returns:
            SemilinearEnvelopes 객체 (어떤 표본이 0 이하면 M_* 없음,
            ε = 0 이면 해가 0 이므로 M_* 없이 M^* = 0)
        """
        epsilon = self.spec.epsilon
        mask = u.core_mask
        weight = u.weight()[mask]
        linear_floor = float(np.min(weight * self.linear[mask]))
        if epsilon == 0:
            return SemilinearEnvelopes(epsilon=0.0, M_star=None, M_star_upper=0.0,
                                       linear_floor=linear_floor, positive=False)
        floor = float(np.min(weight * u.values[mask])) / epsilon
        positive = bool(np.all(u.values[mask] > 0))
        return SemilinearEnvelopes(
            epsilon=epsilon,
            M_star=floor if positive else None,
            M_star_upper=u.weighted_norm / epsilon,
            linear_floor=linear_floor,
            positive=positive
        )

    def correction_exponent(self, epsilons: Iterable[float]) -> Tuple[float, pd.DataFrame]:
        """
        ‖u - εS(t)φ‖ ~ C ε^q 의 지수 q 회귀

        Args:
            epsilons: 양수 ε 목록

        Returns:
            (q, epsilon/correction_norm DataFrame)
        """
        rows = []
        for epsilon in epsilons:
            if epsilon <= 0:
                raise DomainError(f"ε 는 양수여야 합니다: {epsilon}")
            result = self.with_epsilon(epsilon).picard_solve()
            field = result.field
            rows.append({'epsilon': epsilon, 'correction_norm': field.norm_of(field.correction)})
        table = pd.DataFrame(rows)
        model = LinearRegression()
        model.fit(np.log(table[['epsilon']].to_numpy()), np.log(table['correction_norm'].to_numpy()))
        exponent = float(model.coef_[0])
        logger.info("correction exponent N=%d p=%g: %.4f", self.N, self.p, exponent)
        return exponent, table


def regime_summary(N: int, p: float, beta_1: Optional[float] = None) -> dict:
    """
    (N, p) 의 지수 정보

    Args:
        N: 차원
        p: 비선형 지수 (p > 1)
        beta_1: 경험적 양성 임계값 β₁ (선택)

    Returns:
        beta, fujita_exponent, super_fujita, r_c, p_positive_bound 딕셔너리
    """
    if int(N) != N or N < 1:
        raise DomainError(f"차원 N은 1 이상의 정수여야 합니다: {N}")
    if not p > 1:
        raise DomainError(f"p 는 1 보다 커야 합니다: {p}")
    if beta_1 is not None and not beta_1 > 0:
        raise DomainError(f"β₁ 은 양수여야 합니다: {beta_1}")
    fujita = 1.0 + 4.0 / N
    return {
        'N': int(N),
        'p': p,
        'beta': 4.0 / (p - 1.0),
        'fujita_exponent': fujita,
        'super_fujita': bool(p > fujita),
        'r_c': N * (p - 1.0) / 4.0,
        'p_positive_bound': 1.0 + 4.0 / beta_1 if beta_1 is not None else None
    }


class HBoundSolver:
    """
    H(x,t) = ∫₀^t ∫ exp[-c₂(|y|/s^{1/4})^{4/3}] s^{-N/4} / (|x-y|^β + (t-s)^{β/4})^p dy ds 평가

    σ = t/s, y = s^{1/4} z 로 바꾸면 t^{β/4} H(x,t) = J(|x| t^{-1/4}) 이고
    J(w) = ∫₁^∞ σ^{β/4-1} ∫ e^{-c₂|z|^{4/3}} / (|z - σ^{1/4} w e₁|^β + (σ-1)^{β/4})^p dz dσ 이다.
    """

    def __init__(self, N: int, p: float, tol: float = 1e-9, threads: int = 1,
                 c2: Optional[float] = None):
        """
        HBoundSolver 초기화

        Args:
            N: 차원
            p: 비선형 지수 (p > 1 + 4/N)
            tol: 커널 감쇠 상수 추정용 허용 오차
            threads: w 별 병렬 평가 스레드 수
            c2: 감쇠 상수 (없으면 KernelSolver 회귀값)
        """
        if int(N) != N or N < 1:
            raise DomainError(f"차원 N은 1 이상의 정수여야 합니다: {N}")
        if not p > 1.0 + 4.0 / N:
            raise DomainError(f"p는 1 + 4/N = {1 + 4.0 / N:g} 보다 커야 합니다: {p}")
        self.N = int(N)
        self.p = p
        self.beta = 4.0 / (p - 1.0)
        self.threads = threads
        self.c2 = c2 if c2 is not None else KernelSolver(self.N, tol=tol, threads=threads).fit_decay_constants()[1]
        # e^{-c₂|z|^{4/3}} < e^{-40} 밖은 무시
        self.Z = (40.0 / self.c2) ** 0.75

        if self.N > 1:
            edges = np.concatenate([[0.0], math.pi - math.pi * 2.0 ** -np.arange(1, 12), [math.pi]])
            theta, weights = panel_rule(edges[:-1], edges[1:], 8)
            self._cos = np.cos(theta)
            self._angular = sphere_area(self.N - 1) * weights * np.sin(theta) ** (self.N - 2)

    def angle(self, C: float, rho: np.ndarray) -> np.ndarray:
        """|z'| = ρ 구면 위 e^{-c₂|z' + C e₁|^{4/3}} 적분"""
        if self.N == 1:
            return np.exp(-self.c2 * np.abs(C + rho) ** (4.0 / 3.0)) + np.exp(-self.c2 * np.abs(C - rho) ** (4.0 / 3.0))
        d2 = np.maximum(C * C + rho[:, None] ** 2 + 2.0 * C * rho[:, None] * self._cos[None, :], 0.0)
        return np.exp(-self.c2 * d2 ** (2.0 / 3.0)) @ self._angular

    def inner(self, C: float, tau: float) -> float:
        """∫₀^∞ ρ^{N-1} Ang(C, ρ) / (ρ^β + τ)^p dρ"""
        N, beta, p = self.N, self.beta, self.p
        total = 0.0
        start = max(0.0, C - self.Z)

        if C <= self.Z + 0.5:
            rho_lo = min(tau ** (1.0 / beta), 1.0) * 1e-3
            lo, hi = geometric_panels(rho_lo, 0.5, ratio=4.0)
            rho, w = panel_rule(lo, hi, 8)
            total += float(np.sum(w * rho ** (N - 1) * self.angle(C, rho) / (rho ** beta + tau) ** p))
            # ρ < rho_lo: ρ^β ≪ τ
            total += float(self.angle(C, np.zeros(1))[0]) * rho_lo ** N / N / tau ** p
            start = max(0.5, C - self.Z)

        stop = C + self.Z
        if stop > start:
            panels = max(1, int(math.ceil((stop - start) / 2.0)))
            rho, w = gauss_legendre(start, stop, 10, panels)
            total += float(np.sum(w * rho ** (N - 1) * self.angle(C, rho) / (rho ** beta + tau) ** p))
        return total

    def J(self, w: float) -> float:
        """
        t^{β/4} H(x,t) 의 자기유사 프로파일 J(w), w = |x| t^{-1/4}

        Args:
            w: 자기유사 변수 (0 이상)

        Returns:
            J(w)
        """
        beta = self.beta

        def integrand(sigma, v):
            return sigma ** (beta / 4.0 - 1.0) * self.inner(sigma ** 0.25 * w, v ** (beta / 4.0))

        # σ ∈ [1, 2]: v = σ - 1 을 4배씩 줄어드는 패널로
        hi = 4.0 ** -np.arange(20)
        panels = []
        for right in hi:
            v, weights = gauss_legendre(right / 4.0, right, 8)
            panels.append(sum(wt * integrand(1.0 + vi, vi) for vi, wt in zip(v, weights)))
        tail = power_tail(np.array(panels))
        if tail is None:
            raise QuadratureError(
                f"σ → 1 근처 H 적분의 세분화가 정체되었습니다 (w={w:g}, 패널 비 {panels[-1] / panels[-2]:.4g})")
        near = float(sum(panels)) + tail

        # σ ∈ [2, ∞): σ = 2/τ
        tau, weights = gauss_legendre(0.0, 1.0, 24)
        sigma = 2.0 / tau
        far = sum(wt * 2.0 / ti ** 2 * integrand(si, si - 1.0) for ti, si, wt in zip(tau, sigma, weights))
        return near + float(far)

    def H_value(self, x_norm: float, t: float) -> float:
        """H(x,t) = t^{-β/4} J(|x| t^{-1/4})"""
        if t <= 0:
            raise DomainError(f"t 는 양수여야 합니다: {t}")
        return t ** (-self.beta / 4.0) * self.J(abs(x_norm) * t ** -0.25)

    def _weighted_table(self, x_values, t_values) -> pd.DataFrame:
        x, t = np.meshgrid(np.asarray(x_values, dtype=float), np.asarray(t_values, dtype=float), indexing='ij')
        x, t = x.ravel(), t.ravel()
        if np.any(t <= 0) or np.any(x < 0):
            raise DomainError("x 는 0 이상, t 는 양수여야 합니다.")
        w = x * t ** -0.25
        unique, index = np.unique(w, return_inverse=True)
        J = np.array(parallel_map(self.J, unique, self.threads))[index]
        return pd.DataFrame({
            'x': x,
            't': t,
            'H_value': t ** (-self.beta / 4.0) * J,
            'weighted': (w ** self.beta + 1.0) * J
        })

    def H_bound_report(self, x_values, t_values, stability: bool = True) -> HReport:
        """
        표본 (|x|, t) 위 (|x|^β + t^{β/4}) H 의 최댓값과 범위 두 배 안정성

        Args:
            x_values: |x| 표본 (0 이상)
            t_values: t 표본 (양수)
            stability: 범위를 두 배로 넓힌 격자도 계산할지 여부

        Returns:
            HReport 객체
        """
        x_values = np.asarray(x_values, dtype=float)
        t_values = np.asarray(t_values, dtype=float)
        samples = self._weighted_table(x_values, t_values)
        weighted_sup = float(samples['weighted'].max())

        doubled_sup = None
        if stability:
            doubled_sup = float(self._weighted_table(_doubled(x_values), _doubled(t_values))['weighted'].max())
        logger.info("H bound N=%d p=%g: weighted sup %.6g (doubled %s)", self.N, self.p, weighted_sup, doubled_sup)
        return HReport(N=self.N, p=self.p, samples=samples, weighted_sup=weighted_sup,
                       c2_used=self.c2, doubled_sup=doubled_sup)


def _doubled(values: np.ndarray) -> np.ndarray:
    """같은 점 수로 [min/2, 2·max] (min = 0 이면 [0, 2·max]) 범위 표본"""
    lo, hi = float(values.min()), float(values.max())
    if values.size == 1:
        return np.array([2.0 * hi])
    if lo > 0:
        return np.geomspace(lo / 2.0, 2.0 * hi, values.size)
    return np.linspace(0.0, 2.0 * hi, values.size)
