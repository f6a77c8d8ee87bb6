"""
프로파일 및 보고서 데이터 모델 정의
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from models.errors import DomainError

MONOTONE_FLAGS = ("strictly-decreasing", "non-increasing", "unknown")
VERDICTS = ("certified-positive", "witness-negative", "inconclusive")
METHODS = ("lobe-monotonicity", "N2-derivative-trick", "N1-monotone-map", "grid-scan")


@dataclass
class RadialGrid:
    """엄격히 증가하는 반경 격자와 (선택적) 값"""
    eta: np.ndarray
    values: Optional[np.ndarray] = None
    dimension: Optional[int] = None
    beta: Optional[float] = None

    def __post_init__(self):
        self.eta = np.atleast_1d(np.asarray(self.eta, dtype=float))
        if self.eta.size == 0:
            raise DomainError("격자가 비어 있습니다.")
        if np.any(self.eta < 0) or not np.all(np.isfinite(self.eta)):
            raise DomainError("격자 값은 유한한 음이 아닌 실수여야 합니다.")
        if np.any(np.diff(self.eta) <= 0):
            raise DomainError("격자는 엄격히 증가해야 합니다.")
        if self.values is not None:
            self.values = np.asarray(self.values, dtype=float)
            if self.values.shape != self.eta.shape:
                raise DomainError("격자와 값의 길이가 다릅니다.")

    def __len__(self) -> int:
        return self.eta.size


@dataclass(frozen=True)
class RangeSpec:
    """MIN:MAX:COUNT[:linear|log] 형식의 범위 지정"""
    minimum: float
    maximum: float
    count: int
    spacing: str = "linear"

    def values(self) -> np.ndarray:
        """범위에 해당하는 표본점 배열"""
        if self.count == 1:
            return np.array([self.minimum])
        if self.spacing == "log":
            return np.geomspace(self.minimum, self.maximum, self.count)
        return np.linspace(self.minimum, self.maximum, self.count)

    def doubled(self) -> "RangeSpec":
        """양쪽 끝을 두 배로 넓힌 범위"""
        low = self.minimum / 2.0 if self.minimum > 0 else self.minimum
        return RangeSpec(low, self.maximum * 2.0, self.count * 2, self.spacing)

    def to_dict(self) -> dict:
        return {'min': self.minimum, 'max': self.maximum, 'count': self.count, 'spacing': self.spacing}


@dataclass
class Lobe:
    """Bessel 영점 사이 구간 하나의 적분"""
    k: int
    left: float
    right: float
    signed_integral: float
    abs_integral: float
    error: float

    def to_dict(self) -> dict:
        return {
            'k': self.k,
            'left': self.left,
            'right': self.right,
            'signed_integral': self.signed_integral,
            'abs_integral': self.abs_integral,
            'error': self.error
        }


@dataclass
class LobeDecomposition:
    """lobe 분해 결과"""
    order: float
    lobes: List[Lobe]
    tail_bound: float
    weight_checked: Optional[bool] = None

    @property
    def signed(self) -> np.ndarray:
        return np.array([lobe.signed_integral for lobe in self.lobes])

    @property
    def magnitudes(self) -> np.ndarray:
        return np.array([lobe.abs_integral for lobe in self.lobes])

    @property
    def errors(self) -> np.ndarray:
        return np.array([lobe.error for lobe in self.lobes])

    def is_decreasing(self, strict: bool = False, floor: float = 0.0) -> bool:
        """
        M_k 감소 여부 (구적 오차 범위 안에서)

        Args:
            strict: True면 오차를 고려하지 않고 엄격한 감소만 인정
            floor: strict 판정에서 무시할 크기. floor 이하 lobe 는 끝쪽에만 올 수 있다

        Returns:
            감소 여부
        """
        m = self.magnitudes
        if m.size < 2:
            return True
        drop = m[:-1] - m[1:]
        if strict:
            visible = m > floor
            count = int(np.count_nonzero(visible))
            if not np.all(visible[:count]):
                return False
            return bool(np.all(drop[:max(count - 1, 0)] > 0))
        slack = self.errors[:-1] + self.errors[1:] + 1e-300
        return bool(np.all(drop >= -slack))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([lobe.to_dict() for lobe in self.lobes])


@dataclass
class AlternatingSum:
    """교대 lobe 합과 양성 인증 여부"""
    value: float
    error_bound: float
    certified: bool


@dataclass
class WeightSpec:
    """lobe 적분의 가중치 W(s)"""
    evaluator: Callable[[np.ndarray], np.ndarray]
    monotone: str = "unknown"
    small_s_exponent: float = 0.0
    scale: Optional[float] = None

    def __post_init__(self):
        if self.monotone not in MONOTONE_FLAGS:
            raise DomainError(f"알 수 없는 단조성 표시입니다: {self.monotone}")

    def __call__(self, s: np.ndarray) -> np.ndarray:
        return self.evaluator(s)


@dataclass
class KernelProfile:
    """열핵 프로파일 f_N 표"""
    dimension: int
    grid: RadialGrid
    errors: np.ndarray
    alpha: float
    c1: float
    c2: float
    spline: Optional[Callable] = field(default=None, repr=False)

    @property
    def values(self) -> np.ndarray:
        return self.grid.values

    def evaluate(self, eta) -> np.ndarray:
        """
        스플라인 보간으로 f_N 평가 (표 범위 밖은 0)

        Args:
            eta: η 값 (스칼라 또는 배열)

        Returns:
            f_N(η) 근사값
        """
        eta = np.abs(np.asarray(eta, dtype=float))
        out = np.zeros_like(eta)
        inside = eta <= self.grid.eta[-1]
        if np.any(inside):
            out[inside] = self.spline(eta[inside])
        return out

    def kernel(self, x_norm, t) -> np.ndarray:
        """G(x,t) = α_N t^{-N/4} f_N(|x| t^{-1/4})"""
        t = np.asarray(t, dtype=float)
        return self.alpha * t ** (-self.dimension / 4.0) * self.evaluate(np.asarray(x_norm) * t ** -0.25)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'eta': self.grid.eta, 'f_value': self.values, 'abs_err': self.errors})

    def to_dict(self) -> dict:
        return {
            'dimension': self.dimension,
            'alpha': self.alpha,
            'c1': self.c1,
            'c2': self.c2,
            'eta': self.grid.eta.tolist(),
            'values': self.values.tolist(),
            'errors': self.errors.tolist()
        }


@dataclass
class SelfSimilarProfile:
    """자기유사 프로파일 F_{N,β} 표와 점근 상수"""
    N: int
    beta: float
    grid: RadialGrid
    errors: np.ndarray
    A: float
    A_tilde: float
    c: float
    spline: Optional[Callable] = field(default=None, repr=False)

    @property
    def values(self) -> np.ndarray:
        return self.grid.values

    def scaled(self, eta) -> np.ndarray:
        """
        η^{-β} F_{N,β}(η) 평가 (표 아래는 Ã, 표 위는 A η^{-β})

        Args:
            eta: η 값 (스칼라 또는 배열, η ≥ 0)

        Returns:
            η^{-β} F 값
        """
        eta = np.asarray(eta, dtype=float)
        out = np.empty_like(eta)
        lo, hi = self.grid.eta[0], self.grid.eta[-1]
        below = eta < lo
        above = eta > hi
        inside = ~(below | above)
        out[below] = self.A_tilde
        out[above] = self.A * eta[above] ** (-self.beta)
        if np.any(inside):
            out[inside] = self.spline(np.log(eta[inside]))
        return out

    def evaluate(self, eta) -> np.ndarray:
        """F_{N,β}(η) 평가"""
        eta = np.asarray(eta, dtype=float)
        return eta ** self.beta * self.scaled(eta)

    def solution(self, x_norm, t) -> np.ndarray:
        """
        선형 해 [S(t)φ](x) = c t^{-β/4} η^{-β} F(η), η = |x| t^{-1/4}

        Args:
            x_norm: |x| 값
            t: 시간 (양수)

        Returns:
            해의 값
        """
        x_norm = np.asarray(x_norm, dtype=float)
        t = np.asarray(t, dtype=float)
        return self.c * t ** (-self.beta / 4.0) * self.scaled(np.abs(x_norm) * t ** -0.25)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'eta': self.grid.eta, 'F_value': self.values, 'abs_err': self.errors})

    def to_dict(self) -> dict:
        return {
            'N': self.N,
            'beta': self.beta,
            'A': self.A,
            'A_tilde': self.A_tilde,
            'c': self.c,
            'eta': self.grid.eta.tolist(),
            'values': self.values.tolist(),
            'errors': self.errors.tolist()
        }


@dataclass
class PositivityReport:
    """양성 판정 보고서"""
    N: int
    beta: float
    verdict: str
    method: str
    beta_0: float
    details: str = ""
    witness: Optional[Tuple[float, float]] = None
    min_value: Optional[float] = None
    samples: Optional[pd.DataFrame] = field(default=None, repr=False)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise DomainError(f"알 수 없는 판정입니다: {self.verdict}")
        if self.method not in METHODS:
            raise DomainError(f"알 수 없는 판정 방법입니다: {self.method}")
        if (self.witness is not None) != (self.verdict == "witness-negative"):
            raise DomainError("음수 증인은 witness-negative 판정일 때만 존재합니다.")

    @property
    def is_positive(self) -> bool:
        return self.verdict == "certified-positive"

    def to_dict(self) -> dict:
        return {
            'N': self.N,
            'beta': self.beta,
            'verdict': self.verdict,
            'method': self.method,
            'beta_0': self.beta_0,
            'details': self.details,
            'witness_eta': self.witness[0] if self.witness else None,
            'witness_value': self.witness[1] if self.witness else None,
            'min_value': self.min_value
        }


@dataclass
class NegativityWitness:
    """F_{N,N} = η^N f_N 의 음수 증인"""
    N: int
    eta: float
    value: float
    kernel_value: float
    relative_difference: float


@dataclass
class EnvelopeConstants:
    """선형 해의 포락선 상수"""
    N: int
    beta: float
    K_star: Optional[float]
    K_star_upper: float
    K1: Optional[float]
    K2: Optional[float]
    sharp_lower: Optional[float]
    sharp_upper: float
    verified_samples: int = 0

    def to_dict(self) -> dict:
        return {
            'N': self.N,
            'beta': self.beta,
            'K_star': self.K_star,
            'K_star_upper': self.K_star_upper,
            'K1': self.K1,
            'K2': self.K2,
            'sharp_lower': self.sharp_lower,
            'sharp_upper': self.sharp_upper,
            'verified_samples': self.verified_samples
        }


@dataclass
class RadialDensity:
    """음이 아닌 반경 밀도 f (선형 보간, 마지막 반경 밖은 0)"""
    radii: np.ndarray
    values: np.ndarray
    q: float

    def __post_init__(self):
        self.radii = np.asarray(self.radii, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.radii.shape != self.values.shape or self.radii.size < 2:
            raise DomainError("밀도 표는 같은 길이의 반경/값 열이 2개 이상 필요합니다.")
        if np.any(np.diff(self.radii) <= 0) or self.radii[0] < 0:
            raise DomainError("밀도 반경은 0 이상이며 엄격히 증가해야 합니다.")
        negative = np.flatnonzero(self.values < 0)
        if negative.size:
            i = negative[0]
            raise DomainError(f"밀도 값이 음수입니다: r={self.radii[i]}, f={self.values[i]}")
        if not self.q > 1:
            raise DomainError(f"q는 1보다 커야 합니다: {self.q}")

    def evaluate(self, r) -> np.ndarray:
        return np.interp(np.asarray(r, dtype=float), self.radii, self.values, left=self.values[0], right=0.0)

    @property
    def is_trivial(self) -> bool:
        return bool(np.all(self.values == 0))

    @classmethod
    def from_frame(cls, frame: pd.DataFrame, q: float) -> 'RadialDensity':
        """두 열(반경, 값) DataFrame에서 생성"""
        if frame.shape[1] < 2:
            raise DomainError("밀도 파일에는 (radius, value) 두 열이 필요합니다.")
        return cls(radii=frame.iloc[:, 0].to_numpy(dtype=float),
                   values=frame.iloc[:, 1].to_numpy(dtype=float), q=q)


@dataclass
class ProblemSpec:
    """반선형 문제 설정"""
    N: int
    p: float
    epsilon: float
    tol: float = 1e-8
    max_iters: int = 15

    def __post_init__(self):
        if self.N < 1:
            raise DomainError(f"차원 N은 1 이상이어야 합니다: {self.N}")
        if not self.p > 1 + 4.0 / self.N:
            raise DomainError(f"p는 1 + 4/N = {1 + 4.0 / self.N:g} 보다 커야 합니다: {self.p}")
        if self.epsilon < 0:
            raise DomainError(f"ε은 음수일 수 없습니다: {self.epsilon}")
        if self.tol <= 0 or self.max_iters < 1:
            raise DomainError("tol은 양수, max_iters는 1 이상이어야 합니다.")

    @property
    def beta(self) -> float:
        return 4.0 / (self.p - 1.0)

    def to_dict(self) -> dict:
        return {'N': self.N, 'p': self.p, 'beta': self.beta, 'epsilon': self.epsilon,
                'tol': self.tol, 'max_iters': self.max_iters}


@dataclass
class WeightedField:
    """자기유사 장 u(x,t) = t^{-β/4} W(|x| t^{-1/4})"""
    eta: np.ndarray
    values: np.ndarray
    beta: float
    core: Tuple[float, float] = (1e-3, 1e3)
    linear: Optional[np.ndarray] = None
    correction: Optional[np.ndarray] = None

    def __post_init__(self):
        self.eta = np.asarray(self.eta, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.eta.shape != self.values.shape:
            raise DomainError("장의 격자와 값 길이가 다릅니다.")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("장의 값에 NaN 또는 무한대가 있습니다.")

    @property
    def core_mask(self) -> np.ndarray:
        return (self.eta >= self.core[0]) & (self.eta <= self.core[1])

    def weight(self) -> np.ndarray:
        return self.eta ** self.beta + 1.0

    def norm_of(self, values: np.ndarray) -> float:
        """가중 sup 노름 sup (η^β + 1)|v| (핵심 구간 표본)"""
        mask = self.core_mask
        return float(np.max(self.weight()[mask] * np.abs(values[mask])))

    @property
    def weighted_norm(self) -> float:
        return self.norm_of(self.values)

    def evaluate(self, x_norm, t) -> np.ndarray:
        """로그 격자 선형 보간으로 u(x,t) 재구성"""
        x_norm = np.asarray(x_norm, dtype=float)
        t = np.asarray(t, dtype=float)
        eta = np.maximum(np.abs(x_norm) * t ** -0.25, self.eta[0])
        profile = np.interp(np.log(eta), np.log(self.eta), self.values)
        return t ** (-self.beta / 4.0) * profile

    def to_frame(self) -> pd.DataFrame:
        mask = self.core_mask
        frame = pd.DataFrame({
            'eta': self.eta[mask],
            'W_value': self.values[mask],
            'linear_value': self.linear[mask] if self.linear is not None else np.nan,
        })
        frame['weighted'] = (frame['eta'] ** self.beta + 1.0) * frame['W_value']
        return frame


@dataclass
class PicardResult:
    """Picard 반복 결과"""
    field: WeightedField
    contraction_log: List[float]
    converged: bool
    in_ball: bool
    ball_radius: float

    @property
    def iterations(self) -> int:
        return len(self.contraction_log)

    @property
    def observed_ratios(self) -> List[float]:
        log = self.contraction_log
        return [log[i + 1] / log[i] for i in range(len(log) - 1) if log[i] > 0]


@dataclass
class SemilinearEnvelopes:
    """수렴한 해의 포락선 상수 εM_* ≤ (|x|^β + t^{β/4})u ≤ εM^*"""
    epsilon: float
    M_star: Optional[float]
    M_star_upper: float
    linear_floor: float
    positive: bool

    @property
    def ratio(self) -> Optional[float]:
        """M_* / (선형 해의 같은 최솟값), ε → 0 에서 1 로 수렴"""
        if self.M_star is None or self.linear_floor <= 0:
            return None
        return self.M_star / self.linear_floor

    def to_dict(self) -> dict:
        return {'epsilon': self.epsilon, 'M_star': self.M_star, 'M_star_upper': self.M_star_upper,
                'linear_floor': self.linear_floor, 'ratio': self.ratio, 'positive': self.positive}


@dataclass
class HReport:
    """H 적분 상한 보고서"""
    N: int
    p: float
    samples: pd.DataFrame
    weighted_sup: float
    c2_used: float
    doubled_sup: Optional[float] = None

    @property
    def stable(self) -> Optional[bool]:
        if self.doubled_sup is None:
            return None
        return abs(self.doubled_sup - self.weighted_sup) < 0.05 * self.weighted_sup

    def to_dict(self) -> dict:
        return {'N': self.N, 'p': self.p, 'weighted_sup': self.weighted_sup,
                'c2_used': self.c2_used, 'doubled_sup': self.doubled_sup, 'stable': self.stable}


@dataclass
class RunConfig:
    """CLI 실행 설정"""
    subcommand: str
    N: Optional[int] = None
    beta: Optional[float] = None
    p: Optional[float] = None
    ranges: Dict[str, RangeSpec] = field(default_factory=dict)
    tol: float = 1e-9
    epsilon: Optional[float] = None
    output_format: str = "csv"
    output_path: Optional[str] = None
    threads: int = 1

    def to_dict(self) -> dict:
        return {
            'subcommand': self.subcommand,
            'N': self.N,
            'beta': self.beta,
            'p': self.p,
            'ranges': {k: v.to_dict() for k, v in sorted(self.ranges.items())},
            'tol': self.tol,
            'epsilon': self.epsilon,
            'format': self.output_format,
        }
