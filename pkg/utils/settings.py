"""
환경 설정 및 로깅 유틸리티 모듈
"""

import logging
import os
import sys
from dataclasses import dataclass, replace
from typing import Optional

from dotenv import load_dotenv

from models.errors import ConfigError

load_dotenv()

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    """실행 설정"""
    threads: int = 1
    log_level: str = "WARNING"
    default_tol: float = 1e-9
    scan_points: int = 2000

    def with_overrides(self, threads: Optional[int] = None, tol: Optional[float] = None,
                       log_level: Optional[str] = None) -> "Settings":
        """CLI 옵션으로 일부 값을 덮어쓴 새 설정 반환"""
        updated = self
        if threads is not None:
            updated = replace(updated, threads=_check_threads(threads, "--threads"))
        if tol is not None:
            updated = replace(updated, default_tol=_check_tol(tol, "--tol"))
        if log_level is not None:
            updated = replace(updated, log_level=_check_level(log_level, "--log-level"))
        return updated


def _check_threads(value: int, name: str) -> int:
    if value < 1:
        raise ConfigError(f"{name} 값은 1 이상이어야 합니다: {value}")
    return value


def _check_tol(value: float, name: str) -> float:
    if not (0.0 < value <= 1e-2):
        raise ConfigError(f"{name} 값은 (0, 1e-2] 범위여야 합니다: {value}")
    return value


def _check_level(value: str, name: str) -> str:
    level = value.strip().upper()
    if level not in _LEVELS:
        raise ConfigError(f"{name} 값이 올바른 로그 레벨이 아닙니다: {value}")
    return level


def load_settings() -> Settings:
    """
    환경 변수에서 설정 로드

    Returns:
        Settings 객체
    """
    def read(name: str, cast, default):
        raw = os.getenv(name)
        if raw is None or not raw.strip():
            return default
        try:
            return cast(raw.strip())
        except ValueError:
            raise ConfigError(f"환경 변수 {name} 값을 해석할 수 없습니다: '{raw}'")

    threads = _check_threads(read("BIHARM_THREADS", int, 1), "BIHARM_THREADS")
    level = _check_level(read("BIHARM_LOG_LEVEL", str, "WARNING"), "BIHARM_LOG_LEVEL")
    tol = _check_tol(read("BIHARM_DEFAULT_TOL", float, 1e-9), "BIHARM_DEFAULT_TOL")
    scan_points = read("BIHARM_SCAN_POINTS", int, 2000)
    if scan_points < 10:
        raise ConfigError(f"BIHARM_SCAN_POINTS 값은 10 이상이어야 합니다: {scan_points}")

    return Settings(threads=threads, log_level=level, default_tol=tol, scan_points=scan_points)


def configure_logging(level: str = "WARNING") -> logging.Logger:
    """
    루트 로거에 stderr 핸들러 설정 (중복 설치 없음)

    Args:
        level: 로그 레벨 이름

    Returns:
        설정된 루트 로거
    """
    root = logging.getLogger()
    if not any(getattr(h, "_biharm", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._biharm = True
        root.addHandler(handler)
    root.setLevel(getattr(logging, _check_level(level, "log level")))
    return root
