"""
출력 테이블 스키마 정의
"""

from pathlib import Path

# CLI JSON 출력이 따라야 하는 스키마 파일
TABLE_SCHEMA_PATH = Path(__file__).resolve().parent.parent / "schemas" / "table.schema.json"

# 서브커맨드별 CSV 컬럼 순서
TABLE_COLUMNS = {
    "bessel_zeros": ["k", "zero"],
    "bessel_eval": ["eta", "J_value", "J_prime"],
    "kernel_eval": ["eta", "f_value", "abs_err"],
    "kernel_sign_changes": ["index", "eta_zero"],
    "kernel_identity": ["N", "eta", "residual"],
    "kernel_fourier": ["N", "t", "xi", "symbol", "exact", "residual"],
    "profile": ["eta", "F_value", "abs_err"],
    "solution": ["x", "t", "u_value", "weighted"],
    "scan": ["beta", "verdict", "min_F", "witness_eta"],
    "riesz": ["x", "t", "value"],
    "semilinear": ["eta", "W_value", "linear_value", "weighted"],
    "hbound": ["x", "t", "H_value", "weighted"],
    "regime": ["N", "p", "beta", "fujita_exponent", "super_fujita", "r_c", "p_positive_bound"],
}


def load_table_schema() -> dict:
    """
    스키마 파일 로드

    Returns:
        JSON 스키마 딕셔너리
    """
    import json

    with open(TABLE_SCHEMA_PATH, "r", encoding="utf-8") as f:
        return json.load(f)
