"""
쌍조화 열방정식 수치 계산 서비스 메인 비즈니스 로직 모듈
솔버와 유틸의 기능을 모두 처리하는 서비스 레이어
"""

import logging
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from models.errors import ConfigError, DomainError
from models.profiles import ProblemSpec, RadialDensity, RangeSpec
from models.schema import TABLE_COLUMNS
from solvers.kernel_solver import KernelSolver
from solvers.linear_solver import LinearSolver
from solvers.semilinear_solver import HBoundSolver, SemilinearSolver, regime_summary
from utils.bessel_utils import bessel_j, bessel_j_prime, bessel_zeros
from utils.settings import Settings, configure_logging, load_settings

logger = logging.getLogger(__name__)

# 전역 변수
settings: Optional[Settings] = None

IDENTITY_GRID = np.linspace(0.1, 5.0, 50)
FOURIER_TIME = 1.0
FOURIER_GRID = np.linspace(0.1, 2.0, 20)
PICARD_TOL = 1e-8


def initialize(threads: Optional[int] = None, tol: Optional[float] = None,
               log_level: Optional[str] = None) -> Settings:
    """
    환경 설정 로드 및 로깅 초기화

    Args:
        threads: 스레드 수 (없으면 BIHARM_THREADS)
        tol: 기본 허용 오차 (없으면 BIHARM_DEFAULT_TOL)
        log_level: 로그 레벨 (없으면 BIHARM_LOG_LEVEL)

    Returns:
        적용된 Settings 객체
    """
    global settings
    settings = load_settings().with_overrides(threads=threads, tol=tol, log_level=log_level)
    configure_logging(settings.log_level)
    logger.debug("settings: %s", settings)
    return settings


def _settings() -> Settings:
    if settings is None:
        initialize()
    return settings


def _ordered(frame: pd.DataFrame, table: str) -> pd.DataFrame:
    return frame[TABLE_COLUMNS[table]].reset_index(drop=True)


def bessel_table(mu: float, zeros: Optional[int] = None,
                 eta: Optional[RangeSpec] = None) -> Tuple[pd.DataFrame, dict]:
    """
    Bessel 영점 또는 J_μ, J_μ' 값 표

    Args:
        mu: 차수 (μ ≥ -1/2)
        zeros: 영점 개수 (eta 와 택일)
        eta: 평가할 η 범위

    Returns:
        (표, 추가 정보)
    """
    if (zeros is None) == (eta is None):
        raise ConfigError("--zeros 와 --eval 중 하나만 지정해야 합니다")
    if zeros is not None:
        if zeros < 1:
            raise ConfigError(f"--zeros 값은 1 이상이어야 합니다: {zeros}")
        values = bessel_zeros(mu, zeros)
        frame = pd.DataFrame({'k': np.arange(1, zeros + 1), 'zero': values})
        return _ordered(frame, "bessel_zeros"), {'mu': mu}

    grid = eta.values()
    frame = pd.DataFrame({'eta': grid, 'J_value': bessel_j(mu, grid), 'J_prime': bessel_j_prime(mu, grid)})
    return _ordered(frame, "bessel_eval"), {'mu': mu}


def kernel_table(N: int, eval_range: Optional[RangeSpec] = None, sign_changes: Optional[float] = None,
                 identity_check: bool = False, fourier_check: bool = False) -> Tuple[pd.DataFrame, dict]:
    """
    열핵 프로파일 f_N 관련 표

    Args:
        N: 차원
        eval_range: f_N 을 평가할 η 범위
        sign_changes: 부호 변화 탐색 상한
        identity_check: f_N' = -η f_{N+2} 잔차 표 여부
        fourier_check: Fourier 심볼 잔차 표 여부

    Returns:
        (표, 추가 정보)
    """
    chosen = sum([eval_range is not None, sign_changes is not None, identity_check, fourier_check])
    if chosen != 1:
        raise ConfigError("--eval, --sign-changes, --identity-check, --fourier-check 중 하나만 지정해야 합니다")

    config = _settings()
    solver = KernelSolver(N, tol=config.default_tol, threads=config.threads)
    extras = {'N': N, 'alpha': solver.alpha, 'small_eta_limit': solver.small_eta_limit()}

    if eval_range is not None:
        grid = eval_range.values()
        values, errors = solver.f_values(grid)
        frame = pd.DataFrame({'eta': grid, 'f_value': values, 'abs_err': errors})
        return _ordered(frame, "kernel_eval"), extras

    if sign_changes is not None:
        zeros = solver.sign_changes(sign_changes)
        frame = pd.DataFrame({'index': np.arange(1, len(zeros) + 1, dtype=int), 'eta_zero': zeros})
        extras['count'] = len(zeros)
        return _ordered(frame, "kernel_sign_changes"), extras

    if identity_check:
        frame = solver.derivative_identity_residual(IDENTITY_GRID)
        extras['max_residual'] = float(frame['residual'].max())
        return _ordered(frame, "kernel_identity"), extras

    frame = solver.fourier_symbol_residual(FOURIER_TIME, FOURIER_GRID)
    extras['max_residual'] = float(frame['residual'].max())
    return _ordered(frame, "kernel_fourier"), extras


def _linear_solver(N: int, beta: float) -> LinearSolver:
    config = _settings()
    return LinearSolver(N, beta, tol=config.default_tol, threads=config.threads,
                        scan_points=config.scan_points)


def profile_table(N: int, beta: float, eta: RangeSpec, certify: bool = False) -> Tuple[pd.DataFrame, dict]:
    """
    자기유사 프로파일 F_{N,β} 표

    Args:
        N: 차원
        beta: 지수 β ∈ (0, N)
        eta: η 범위 (양수)
        certify: 양성 판정 보고서 첨부 여부

    Returns:
        (표, 추가 정보)
    """
    grid = eta.values()
    if np.any(grid <= 0):
        raise DomainError("프로파일 η 범위는 양수여야 합니다.")
    solver = _linear_solver(N, beta)
    values, errors = solver.F_values(grid)
    frame = pd.DataFrame({'eta': grid, 'F_value': values, 'abs_err': errors})
    extras = {'N': N, 'beta': beta, 'A': solver.closed_form_A(), 'A_tilde': solver.A_tilde, 'c': solver.c}
    if certify:
        extras['certificate'] = solver.certify_positivity().to_dict()
    return _ordered(frame, "profile"), extras


def solution_table(N: int, beta: float, x: RangeSpec, t: RangeSpec) -> Tuple[pd.DataFrame, dict]:
    """
    선형 해 [S(t)φ](x) 와 가중값 (|x|^β + t^{β/4}) u 표

    Args:
        N: 차원
        beta: 지수 β
        x: |x| 범위
        t: t 범위

    Returns:
        (표, 추가 정보)
    """
    solver = _linear_solver(N, beta)
    xx, tt = np.meshgrid(x.values(), t.values(), indexing='ij')
    xx, tt = xx.ravel(), tt.ravel()
    if np.any(tt <= 0):
        raise DomainError("t 범위는 양수여야 합니다.")
    u = np.atleast_1d(solver.linear_solution(xx, tt))
    frame = pd.DataFrame({'x': xx, 't': tt, 'u_value': u,
                          'weighted': (np.abs(xx) ** beta + tt ** (beta / 4.0)) * u})
    return _ordered(frame, "solution"), {'N': N, 'beta': beta, 'c': solver.c}


def scan_table(N: int, beta_lo: float, beta_hi: float, resolution: float) -> Tuple[pd.DataFrame, dict]:
    """
    β 임계값 이분 탐색 표

    Args:
        N: 차원
        beta_lo: 탐색 하한
        beta_hi: 탐색 상한
        resolution: 종료 간격

    Returns:
        (β 별 판정 표, 경험적 괄호)
    """
    if not (0 < beta_lo < beta_hi < N):
        raise DomainError(f"0 < beta_lo < beta_hi < N 이어야 합니다: {beta_lo}, {beta_hi}")
    solver = _linear_solver(N, beta_lo)
    positive, negative, frame = solver.scan_beta_threshold(beta_lo, beta_hi, resolution)
    extras = {'N': N, 'largest_positive_beta': positive, 'smallest_negative_beta': negative,
              'empirical': True}
    return _ordered(frame, "scan"), extras


def read_density(path: str, q: float) -> RadialDensity:
    """
    두 열 (radius, value) CSV 밀도 파일 읽기 (첫 행이 숫자가 아니면 헤더로 간주)

    Args:
        path: 파일 경로
        q: 적분 지수

    Returns:
        RadialDensity 객체
    """
    try:
        raw = pd.read_csv(path, header=None)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ConfigError(f"밀도 파일을 읽을 수 없습니다: {path} ({e})")
    numeric = raw.apply(pd.to_numeric, errors='coerce')
    if numeric.iloc[0].isna().any():
        numeric = numeric.iloc[1:]
    if numeric.isna().any().any():
        raise DomainError(f"밀도 파일에 숫자가 아닌 값이 있습니다: {path}")
    return RadialDensity.from_frame(numeric.reset_index(drop=True), q)


def riesz_table(N: int, beta: float, q: float, density_path: str, x: RangeSpec,
                t: RangeSpec) -> Tuple[pd.DataFrame, dict]:
    """
    Riesz 평활 초기값의 해 표

    Args:
        N: 차원
        beta: 지수 β
        q: 밀도 적분 지수
        density_path: 밀도 CSV 경로
        x: |x| 범위
        t: t 범위

    Returns:
        (표, 추가 정보)
    """
    density = read_density(density_path, q)
    solver = _linear_solver(N, beta)
    rows = []
    for time in t.values():
        values = np.atleast_1d(solver.riesz_smoothing(density, x.values(), float(time)))
        rows.append(pd.DataFrame({'x': x.values(), 't': time, 'value': values}))
    frame = pd.concat(rows, ignore_index=True)
    return _ordered(frame, "riesz"), {'N': N, 'beta': beta, 'q': q, 'trivial_density': density.is_trivial}


def semilinear_table(N: int, p: float, epsilon: float, max_iters: int = 15, tol: Optional[float] = None,
                     envelopes: bool = False) -> Tuple[pd.DataFrame, dict]:
    """
    반선형 문제의 Picard 해 프로파일 표

    Args:
        N: 차원
        p: 비선형 지수 (p > 1 + 4/N)
        epsilon: 초기값 크기 ε
        max_iters: 최대 반복 횟수
        tol: Picard 종료 허용 오차 (없으면 1e-8)
        envelopes: 포락선 상수 첨부 여부

    Returns:
        (η 별 프로파일 표, 반복 정보)
    """
    config = _settings()
    spec = ProblemSpec(N=N, p=p, epsilon=epsilon, tol=tol if tol is not None else PICARD_TOL,
                       max_iters=max_iters)
    solver = SemilinearSolver(spec, threads=config.threads, linear_tol=config.default_tol)
    result = solver.picard_solve()
    extras = {
        'problem': spec.to_dict(),
        'iterations': result.iterations,
        'contraction_log': result.contraction_log,
        'observed_ratios': result.observed_ratios,
        'converged': result.converged,
        'in_ball': result.in_ball,
        'ball_radius': result.ball_radius,
        'weighted_norm': result.field.weighted_norm
    }
    if envelopes:
        extras['envelopes'] = solver.verify_envelopes(result.field).to_dict()
    return _ordered(result.field.to_frame(), "semilinear"), extras


def hbound_table(N: int, p: float, x: RangeSpec, t: RangeSpec) -> Tuple[pd.DataFrame, dict]:
    """
    H 적분의 가중 상한 표

    Args:
        N: 차원
        p: 비선형 지수
        x: |x| 범위
        t: t 범위 (양수)

    Returns:
        (표본 표, 보고서 요약)
    """
    config = _settings()
    solver = HBoundSolver(N, p, tol=config.default_tol, threads=config.threads)
    report = solver.H_bound_report(x.values(), t.values())
    return _ordered(report.samples, "hbound"), report.to_dict()


def regime_table(N: int, p: float, beta_1: Optional[float] = None) -> Tuple[pd.DataFrame, dict]:
    """
    (N, p) 지수 정보 한 행 표

    Args:
        N: 차원
        p: 비선형 지수
        beta_1: 경험적 양성 임계값

    Returns:
        (표, 추가 정보)
    """
    summary = regime_summary(N, p, beta_1)
    return _ordered(pd.DataFrame([summary]), "regime"), {'beta_1': beta_1}


def main():
    """메인 함수"""
    import sys
    from cli import run
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
