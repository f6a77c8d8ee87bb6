"""
argparse 기반 배치 명령행 인터페이스 모듈
순수 프론트엔드 레이어 - 옵션 해석과 표 출력만 담당
"""

import argparse
import json
import logging
import math
import sys
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

# main 모듈의 서비스 함수들을 직접 import하여 사용
import main as service
from models.errors import BiharmError, ConfigError
from models.profiles import RunConfig
from utils.grid_utils import parse_range

FORMATS = ("csv", "json")

logger = logging.getLogger(__name__)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="csv", help="출력 형식")
    common.add_argument("--output", default=None, help="출력 파일 경로 (기본: 표준 출력)")
    common.add_argument("--tol", type=float, default=None, help="허용 오차 (0, 1e-2]")
    common.add_argument("--threads", type=int, default=None, help="병렬 평가 스레드 수")
    common.add_argument("--log-level", default=None, help="로그 레벨 (stderr)")
    return common


def build_parser() -> argparse.ArgumentParser:
    """서브커맨드 파서 생성"""
    common = _common_options()
    parser = argparse.ArgumentParser(prog="biharm", description="쌍조화 열방정식 수치 계산 도구")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bessel", parents=[common], help="Bessel 함수 값과 영점")
    p.add_argument("--mu", type=float, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--zeros", type=int)
    group.add_argument("--eval", dest="eval_range")

    p = sub.add_parser("kernel", parents=[common], help="열핵 프로파일 f_N")
    p.add_argument("--dim", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--eval", dest="eval_range")
    group.add_argument("--sign-changes", type=float)
    group.add_argument("--identity-check", action="store_true")
    group.add_argument("--fourier-check", action="store_true")

    p = sub.add_parser("profile", parents=[common], help="자기유사 프로파일 F_{N,β}")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--certify", action="store_true")

    p = sub.add_parser("solution", parents=[common], help="선형 해 S(t)|x|^{-β}")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--t", required=True)

    p = sub.add_parser("scan", parents=[common], help="β 양성 임계값 탐색")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--beta-lo", type=float, required=True)
    p.add_argument("--beta-hi", type=float, required=True)
    p.add_argument("--resolution", type=float, required=True)

    p = sub.add_parser("riesz", parents=[common], help="Riesz 평활 초기값의 해")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--density", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--t", required=True)

    p = sub.add_parser("semilinear", parents=[common], help="반선형 문제 Picard 해")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--max-iters", type=int, default=15)
    p.add_argument("--envelopes", action="store_true")

    p = sub.add_parser("hbound", parents=[common], help="H 적분 가중 상한")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--t", required=True)

    p = sub.add_parser("regime", parents=[common], help="(N, p) 지수 정보")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--beta1", type=float, default=None)
    return parser


def _ranges(args, *names: str) -> Dict[str, object]:
    ranges = {}
    for name in names:
        text = getattr(args, name)
        if text is not None:
            ranges[name] = parse_range(text, f"--{name.replace('_', '-')}")
    return ranges


Handler = Callable[[argparse.Namespace, Dict], Tuple[pd.DataFrame, dict]]

HANDLERS: Dict[str, Handler] = {
    "bessel": lambda a, r: service.bessel_table(a.mu, zeros=a.zeros, eta=r.get("eval_range")),
    "kernel": lambda a, r: service.kernel_table(a.dim, eval_range=r.get("eval_range"),
                                                sign_changes=a.sign_changes, identity_check=a.identity_check,
                                                fourier_check=a.fourier_check),
    "profile": lambda a, r: service.profile_table(a.dim, a.beta, r["eta"], certify=a.certify),
    "solution": lambda a, r: service.solution_table(a.dim, a.beta, r["x"], r["t"]),
    "scan": lambda a, r: service.scan_table(a.dim, a.beta_lo, a.beta_hi, a.resolution),
    "riesz": lambda a, r: service.riesz_table(a.dim, a.beta, a.q, a.density, r["x"], r["t"]),
    "semilinear": lambda a, r: service.semilinear_table(a.dim, a.p, a.epsilon, max_iters=a.max_iters,
                                                        tol=a.tol, envelopes=a.envelopes),
    "hbound": lambda a, r: service.hbound_table(a.dim, a.p, r["x"], r["t"]),
    "regime": lambda a, r: service.regime_table(a.dim, a.p, a.beta1),
}

RANGE_OPTIONS = ("eval_range", "eta", "x", "t")


def _plain(value):
    """JSON 직렬화 가능한 기본 타입으로 변환 (NaN/무한대는 null)"""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    return value


def format_table(frame: pd.DataFrame, meta: dict, output_format: str) -> str:
    """
    표를 CSV 또는 JSON 문자열로 변환

    Args:
        frame: 출력할 표
        meta: JSON meta 객체
        output_format: 'csv' 또는 'json'

    Returns:
        직렬화된 문자열
    """
    if output_format == "csv":
        return frame.to_csv(index=False, lineterminator="\n")
    rows = [{column: _plain(value) for column, value in zip(frame.columns, record)}
            for record in frame.itertuples(index=False, name=None)]
    return json.dumps({'meta': _plain(meta), 'rows': rows}, sort_keys=True, ensure_ascii=False) + "\n"


def _write(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def run(argv: Optional[List[str]] = None) -> int:
    """
    명령행 실행

    Args:
        argv: 인자 목록 (없으면 sys.argv[1:])

    Returns:
        종료 코드 (0 성공, 1 계산 오류, 2 사용법 오류)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    try:
        # semilinear 의 --tol 은 Picard 종료 기준
        quad_tol = None if args.command == "semilinear" else args.tol
        config = service.initialize(threads=args.threads, tol=quad_tol, log_level=args.log_level)
        if args.command == "semilinear" and args.tol is not None and not (0.0 < args.tol <= 1e-2):
            raise ConfigError(f"--tol 값은 (0, 1e-2] 범위여야 합니다: {args.tol}")

        ranges = _ranges(args, *[name for name in RANGE_OPTIONS if hasattr(args, name)])
        frame, extras = HANDLERS[args.command](args, ranges)

        run_config = RunConfig(
            subcommand=args.command,
            N=getattr(args, "dim", None),
            beta=getattr(args, "beta", None),
            p=getattr(args, "p", None),
            ranges=ranges,
            tol=args.tol if args.tol is not None else (
                service.PICARD_TOL if args.command == "semilinear" else config.default_tol),
            epsilon=getattr(args, "epsilon", None),
            output_format=args.format,
            output_path=args.output,
            threads=config.threads
        )
        meta = {
            'subcommand': args.command,
            'columns': list(frame.columns),
            'config': run_config.to_dict(),
            'extras': extras
        }
        _write(format_table(frame, meta, args.format), args.output)
    except ConfigError as e:
        print(f"error[{e.kind}]: {e.message}", file=sys.stderr)
        return 2
    except BiharmError as e:
        print(f"error[{e.kind}]: {e.message}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error[io]: {e}", file=sys.stderr)
        return 1
    except (ArithmeticError, ValueError, RuntimeError) as e:
        # numpy/scipy 내부 오류도 종료 코드 1 로 보고
        logger.debug("numeric failure in %s", args.command, exc_info=True)
        print(f"error[numeric]: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(run())
