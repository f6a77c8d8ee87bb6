import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """BIHARM_* 환경 변수 제거 후 기본 설정으로 실행"""
    for name in list(os.environ):
        if name.startswith("BIHARM_"):
            monkeypatch.delenv(name, raising=False)
    import main
    monkeypatch.setattr(main, "settings", None)
