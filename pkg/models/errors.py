"""
오류 및 경고 클래스 정의
"""

from typing import Optional


class BiharmError(Exception):
    """라이브러리 전체 오류의 기반 클래스"""

    kind = "biharm"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class DomainError(BiharmError, ValueError):
    """입력값이 정의역을 벗어난 경우"""

    kind = "domain"


class ConfigError(BiharmError, ValueError):
    """환경 변수 또는 범위 지정 문자열이 잘못된 경우"""

    kind = "config"


class ConvergenceError(BiharmError):
    """영점 탐색이 반복 한도 내에 수렴하지 못한 경우"""

    kind = "convergence"


class NonIntegrableWeightError(BiharmError):
    """첫 번째 lobe 적분이 수렴하지 않는 경우 (가중치의 원점 근처 증가율 위반)"""

    kind = "non-integrable-weight"


class QuadratureError(BiharmError):
    """적응 구적 세분화가 정체된 경우"""

    kind = "quadrature"


class AccuracyError(BiharmError):
    """lobe 꼬리 상한이 요구 허용오차를 넘는 경우"""

    kind = "accuracy"


class HypothesisViolationError(BiharmError):
    """양성 판정 가정(조건 b, c)이 표본에서 깨진 경우"""

    kind = "hypothesis-violation"

    def __init__(self, message: str, condition: str, location: Optional[float] = None):
        super().__init__(message)
        self.condition = condition
        self.location = location


class PositivityRequiredError(BiharmError):
    """음수 증인이 있는 (N, β)에 대해 하한 상수를 요청한 경우"""

    kind = "positivity-required"


class NormOverflowError(BiharmError):
    """Duhamel 사상의 출력 노름이 입력 상한의 10배를 넘는 경우"""

    kind = "norm-overflow"


class NoConvergenceError(BiharmError):
    """Picard 반복이 최대 횟수 안에 수렴하지 못한 경우"""

    kind = "no-convergence"

    def __init__(self, message: str, observed_ratio: Optional[float] = None):
        super().__init__(message)
        self.observed_ratio = observed_ratio


class MonotonicityWarning(UserWarning):
    """단조 감소로 선언된 가중치가 증가하는 것이 관측된 경우"""
