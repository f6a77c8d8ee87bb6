import numpy as np
import pytest

from models.errors import ConfigError
from models.profiles import RangeSpec
from utils.grid_utils import make_grid, parallel_map, parse_range
from utils.settings import Settings, configure_logging, load_settings


def test_parse_linear_range():
    spec = parse_range("0:2:5")
    assert spec == RangeSpec(0.0, 2.0, 5, "linear")
    np.testing.assert_allclose(spec.values(), [0.0, 0.5, 1.0, 1.5, 2.0])


def test_parse_log_range():
    spec = parse_range("0.01:100:5:log")
    np.testing.assert_allclose(spec.values(), [0.01, 0.1, 1.0, 10.0, 100.0])
    assert spec.to_dict() == {'min': 0.01, 'max': 100.0, 'count': 5, 'spacing': 'log'}


def test_single_point_range():
    np.testing.assert_array_equal(parse_range("1.5:1.5:1").values(), [1.5])


@pytest.mark.parametrize("text", ["1:2", "a:2:3", "2:1:3", "1:2:0", "0:1:3:log", "1:2:3:cubic", "1:2:1"])
def test_bad_ranges(text):
    with pytest.raises(ConfigError) as info:
        parse_range(text, "--eta")
    assert "--eta" in info.value.message


def test_make_grid():
    np.testing.assert_allclose(make_grid(1.0, 8.0, 4, "log"), [1.0, 2.0, 4.0, 8.0])


@pytest.mark.parametrize("threads", [1, 4])
def test_parallel_map_keeps_order(threads):
    assert parallel_map(lambda x: x * x, range(10), threads) == [x * x for x in range(10)]


def test_load_settings_defaults():
    assert load_settings() == Settings()


def test_load_settings_from_env(monkeypatch):
    monkeypatch.setenv("BIHARM_THREADS", "3")
    monkeypatch.setenv("BIHARM_DEFAULT_TOL", "1e-7")
    monkeypatch.setenv("BIHARM_LOG_LEVEL", "info")
    settings = load_settings()
    assert settings.threads == 3
    assert settings.default_tol == 1e-7
    assert settings.log_level == "INFO"


@pytest.mark.parametrize("name,value", [
    ("BIHARM_THREADS", "0"),
    ("BIHARM_THREADS", "many"),
    ("BIHARM_DEFAULT_TOL", "0.5"),
    ("BIHARM_LOG_LEVEL", "LOUD"),
    ("BIHARM_SCAN_POINTS", "5"),
])
def test_bad_env_values(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError):
        load_settings()


def test_overrides():
    settings = Settings().with_overrides(threads=2, tol=1e-6, log_level="debug")
    assert (settings.threads, settings.default_tol, settings.log_level) == (2, 1e-6, "DEBUG")
    with pytest.raises(ConfigError):
        Settings().with_overrides(tol=0.0)


def test_configure_logging_installs_one_handler():
    root = configure_logging("INFO")
    configure_logging("WARNING")
    assert sum(1 for h in root.handlers if getattr(h, "_biharm", False)) == 1
    with pytest.raises(ConfigError):
        configure_logging("VERBOSE")
