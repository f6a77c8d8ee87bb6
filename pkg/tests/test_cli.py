import json
import math

import jsonschema
import numpy as np
import pytest

import main as service
from cli import format_table, run
from models.schema import TABLE_COLUMNS, load_table_schema


def _json_output(capsys, argv):
    assert run(argv + ["--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    jsonschema.validate(document, load_table_schema())
    return document


def test_bessel_zeros_csv(capsys):
    assert run(["bessel", "--mu", "0.5", "--zeros", "3"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "k,zero"
    assert len(lines) == 4
    assert float(lines[3].split(",")[1]) == pytest.approx(3 * math.pi, abs=1e-10)


def test_bessel_eval_json(capsys):
    document = _json_output(capsys, ["bessel", "--mu", "-0.5", "--eval", "1:3:3"])
    assert document['meta']['columns'] == TABLE_COLUMNS['bessel_eval']
    assert document['meta']['config']['ranges']['eval_range'] == {'min': 1.0, 'max': 3.0, 'count': 3,
                                                                  'spacing': 'linear'}
    assert document['rows'][0]['J_value'] == pytest.approx(math.sqrt(2.0 / math.pi) * math.cos(1.0), abs=1e-13)


def test_kernel_eval_json(capsys):
    document = _json_output(capsys, ["kernel", "--dim", "1", "--eval", "0:2:3"])
    rows = document['rows']
    assert [row['eta'] for row in rows] == [0.0, 1.0, 2.0]
    expected = math.sqrt(2.0) * math.gamma(0.25) / (4.0 * math.sqrt(math.pi))
    assert rows[0]['f_value'] == pytest.approx(expected, rel=1e-12)
    assert document['meta']['extras']['N'] == 1


def test_regime_json(capsys):
    document = _json_output(capsys, ["regime", "--dim", "3", "--p", "3", "--beta1", "2"])
    row = document['rows'][0]
    assert row['beta'] == pytest.approx(2.0)
    assert row['super_fujita'] is True
    assert row['p_positive_bound'] == pytest.approx(3.0)


def test_regime_without_beta1_writes_null(capsys):
    document = _json_output(capsys, ["regime", "--dim", "3", "--p", "3"])
    assert document['rows'][0]['p_positive_bound'] is None


def test_profile_csv(capsys):
    assert run(["profile", "--dim", "3", "--beta", "1", "--eta", "0.5:2:4"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "eta,F_value,abs_err"
    assert len(lines) == 5


def test_solution_json(capsys):
    document = _json_output(capsys, ["solution", "--dim", "3", "--beta", "1", "--x", "0:1:3", "--t", "1:1:1"])
    assert len(document['rows']) == 3
    assert all(row['u_value'] > 0 for row in document['rows'])


def test_riesz_trivial_density(tmp_path, capsys):
    density = tmp_path / "density.csv"
    density.write_text("radius,value\n0,0\n1,0\n2,0\n", encoding="utf-8")
    argv = ["riesz", "--dim", "3", "--beta", "1", "--q", "1.2", "--density", str(density),
            "--x", "0.5:1:2", "--t", "1:1:1"]
    document = _json_output(capsys, argv)
    assert [row['value'] for row in document['rows']] == [0.0, 0.0]
    assert document['meta']['extras']['trivial_density'] is True


def test_output_file_is_deterministic(tmp_path):
    outputs = []
    for name in ("first.json", "second.json"):
        path = tmp_path / name
        assert run(["kernel", "--dim", "2", "--eval", "0.5:3:6", "--format", "json", "--output", str(path)]) == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]


@pytest.mark.parametrize("argv", [
    ["regime", "--dim", "2", "--p", "5"],
    ["bessel", "--mu", "1", "--zeros", "5"],
    ["solution", "--dim", "2", "--beta", "0.5", "--x", "0:2:3", "--t", "0.5:2:2"],
])
def test_csv_reruns_are_identical(capsys, argv):
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first


def test_bad_range_is_config_error(capsys):
    assert run(["kernel", "--dim", "1", "--eval", "2:1:5"]) == 2
    assert "error[config]" in capsys.readouterr().err


def test_missing_mode_is_usage_error(capsys):
    assert run(["kernel", "--dim", "1"]) == 2
    assert "--eval" in capsys.readouterr().err


def test_unknown_subcommand(capsys):
    assert run(["heat"]) == 2


def test_bad_tol_is_config_error(capsys):
    assert run(["regime", "--dim", "3", "--p", "3", "--tol", "0.5"]) == 2
    assert "--tol" in capsys.readouterr().err


def test_domain_error_exit_code(capsys):
    assert run(["solution", "--dim", "1", "--beta", "2", "--x", "1:1:1", "--t", "1:1:1"]) == 1
    assert "error[domain]" in capsys.readouterr().err


def test_semilinear_rejects_sub_fujita(capsys):
    assert run(["semilinear", "--dim", "3", "--p", "2", "--epsilon", "0.001"]) == 1
    assert "error[domain]" in capsys.readouterr().err


def test_missing_density_file(tmp_path, capsys):
    argv = ["riesz", "--dim", "3", "--beta", "1", "--q", "1.2", "--density", str(tmp_path / "none.csv"),
            "--x", "1:1:1", "--t", "1:1:1"]
    assert run(argv) == 2
    assert "error[config]" in capsys.readouterr().err


def test_json_nan_becomes_null():
    import pandas as pd

    frame = pd.DataFrame({'eta': [1.0], 'value': [float("nan")]})
    document = json.loads(format_table(frame, {'subcommand': 'profile', 'columns': ['eta', 'value']}, "json"))
    assert document['rows'][0]['value'] is None


@pytest.mark.slow
def test_semilinear_json(capsys):
    document = _json_output(capsys, ["semilinear", "--dim", "3", "--p", "3", "--epsilon", "0.001", "--envelopes"])
    extras = document['meta']['extras']
    assert extras['converged'] is True
    assert extras['iterations'] <= 15
    assert extras['envelopes']['positive'] is True
    assert document['meta']['config']['tol'] == 1e-8
    assert document['meta']['columns'] == TABLE_COLUMNS['semilinear']


@pytest.mark.parametrize("error", [FloatingPointError("overflow encountered"), ZeroDivisionError("float division"),
                                   np.linalg.LinAlgError("singular matrix")])
def test_numeric_failure_is_reported(monkeypatch, capsys, error):
    def failing(*args, **kwargs):
        raise error

    monkeypatch.setattr(service, "regime_table", failing)
    assert run(["regime", "--dim", "3", "--p", "3"]) == 1
    err = capsys.readouterr().err
    assert f"error[numeric]: {type(error).__name__}" in err
    assert "Traceback" not in err


@pytest.mark.slow
def test_scan_brackets_threshold(monkeypatch, capsys):
    monkeypatch.setenv("BIHARM_SCAN_POINTS", "400")
    document = _json_output(capsys, ["scan", "--dim", "1", "--beta-lo", "0.3", "--beta-hi", "0.95",
                                     "--resolution", "0.05"])
    extras = document['meta']['extras']
    assert extras['empirical'] is True
    positive, negative = extras['largest_positive_beta'], extras['smallest_negative_beta']
    assert 0.3 <= positive < negative <= 0.95
    assert negative - positive <= 0.05
    betas = [row['beta'] for row in document['rows']]
    assert betas == sorted(betas)
