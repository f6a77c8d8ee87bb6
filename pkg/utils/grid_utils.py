"""
격자 생성 및 병렬 평가 유틸리티 모듈
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

import numpy as np

from models.errors import ConfigError
from models.profiles import RangeSpec

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

SPACINGS = ("linear", "log")


def parse_range(text: str, name: str = "RANGE") -> RangeSpec:
    """
    MIN:MAX:COUNT[:linear|log] 문자열을 RangeSpec으로 변환

    Args:
        text: 범위 문자열 (예: '0.01:100:200:log')
        name: 오류 메시지에 표시할 옵션 이름

    Returns:
        RangeSpec 객체
    """
    if text is None:
        raise ConfigError(f"{name} 값이 None입니다")

    parts = str(text).strip().split(":")
    if len(parts) not in (3, 4):
        raise ConfigError(f"{name} 형식은 MIN:MAX:COUNT[:linear|log] 이어야 합니다: '{text}'")

    try:
        minimum = float(parts[0])
        maximum = float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise ConfigError(f"{name} 값을 숫자로 해석할 수 없습니다: '{text}'")

    spacing = parts[3].strip().lower() if len(parts) == 4 else "linear"
    if spacing not in SPACINGS:
        raise ConfigError(f"{name} 간격은 linear 또는 log 이어야 합니다: '{spacing}'")
    if not (np.isfinite(minimum) and np.isfinite(maximum)):
        raise ConfigError(f"{name} 끝점은 유한해야 합니다: '{text}'")
    if count < 1:
        raise ConfigError(f"{name} 표본 수는 1 이상이어야 합니다: {count}")
    if count == 1 and minimum != maximum:
        raise ConfigError(f"{name} 표본 수가 1이면 MIN과 MAX가 같아야 합니다: '{text}'")
    if count > 1 and not minimum < maximum:
        raise ConfigError(f"{name} 범위는 MIN < MAX 이어야 합니다: '{text}'")
    if spacing == "log" and minimum <= 0:
        raise ConfigError(f"{name} 로그 간격은 MIN > 0 이어야 합니다: '{text}'")

    return RangeSpec(minimum, maximum, count, spacing)


def make_grid(minimum: float, maximum: float, count: int, spacing: str = "linear") -> np.ndarray:
    """범위 문자열 없이 바로 표본점 배열 생성"""
    return RangeSpec(minimum, maximum, count, spacing).values()


def log_grid(lo: float, hi: float, count: int) -> np.ndarray:
    return np.geomspace(lo, hi, count)


def parallel_map(func: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """
    입력 순서를 보존하는 병렬 map

    Args:
        func: 각 항목에 적용할 함수
        items: 입력 항목
        threads: 작업 스레드 수 (1이면 순차 실행)

    Returns:
        입력 순서대로 정렬된 결과 리스트
    """
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [func(item) for item in items]

    logger.debug("parallel_map: %d items on %d threads", len(items), threads)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, items))
