"""
데이터 모델 및 오류 정의 모듈
"""

from .errors import (
    BiharmError,
    DomainError,
    ConfigError,
    ConvergenceError,
    NonIntegrableWeightError,
    QuadratureError,
    AccuracyError,
    HypothesisViolationError,
    PositivityRequiredError,
    NormOverflowError,
    NoConvergenceError,
    MonotonicityWarning
)
from .profiles import (
    RadialGrid,
    RangeSpec,
    Lobe,
    LobeDecomposition,
    AlternatingSum,
    WeightSpec,
    KernelProfile,
    SelfSimilarProfile,
    PositivityReport,
    NegativityWitness,
    EnvelopeConstants,
    RadialDensity,
    ProblemSpec,
    WeightedField,
    PicardResult,
    SemilinearEnvelopes,
    HReport,
    RunConfig
)
from .schema import TABLE_SCHEMA_PATH, TABLE_COLUMNS, load_table_schema

__all__ = [
    'BiharmError', 'DomainError', 'ConfigError', 'ConvergenceError',
    'NonIntegrableWeightError', 'QuadratureError', 'AccuracyError',
    'HypothesisViolationError', 'PositivityRequiredError', 'NormOverflowError',
    'NoConvergenceError', 'MonotonicityWarning',
    'RadialGrid', 'RangeSpec', 'Lobe', 'LobeDecomposition', 'AlternatingSum',
    'WeightSpec', 'KernelProfile', 'SelfSimilarProfile', 'PositivityReport',
    'NegativityWitness', 'EnvelopeConstants', 'RadialDensity', 'ProblemSpec',
    'WeightedField', 'PicardResult', 'SemilinearEnvelopes', 'HReport', 'RunConfig',
    'TABLE_SCHEMA_PATH', 'TABLE_COLUMNS', 'load_table_schema'
]
