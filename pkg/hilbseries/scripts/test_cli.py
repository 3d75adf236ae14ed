import json
import os

import pytest

from backend.utils.config import ConfigManager
from main import run

ONE = {"num": "1", "den": "1"}


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    environment = {key: value for key, value in os.environ.items() if key not in ConfigManager.OPTIONAL_ENV_VARS}
    monkeypatch.setattr(os, "environ", environment)
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(ConfigManager, "_settings", None)


def run_json(capsys, argv):
    code = run(argv)
    return code, json.loads(capsys.readouterr().out)


def test_compute_verlinde(capsys):
    code, payload = run_json(capsys, ["compute", "verlinde", "--surface", "p2", "--bundle", "O", "--worder", "5"])
    assert code == 0
    assert payload["command"] == "compute verlinde"
    assert payload["orders"] == {"w": 5}
    assert payload["results"]["verlinde"] == [ONE] * 6
    assert payload["pass"] is True
    assert "elapsed" not in payload


def test_usage_errors(capsys):
    cases = [
        ["compute", "verlinde", "--surface", "p2", "--bundle", "O", "--worder", "5", "--colour"],
        ["compute"],
        ["verify", "symmetry", "--d1", "-2", "--d2", "0", "--k", "1"],
        ["compute", "g-series", "--k", "3", "--worder", "1", "--which", "4"],
        ["compute", "g-series", "--k", "3", "--worder", "1", "--flavour", "chern", "--source", "family"],
        ["compute", "b4", "--r", "-1", "--order", "3"],
        ["verify", "bconj", "--r", "1"],
        ["compute", "verlinde", "--surface", "p3", "--bundle", "O", "--worder", "2"],
        ["compute", "hilbk", "--surface", "P2", "--bundle", "O(1,2)", "--worder", "1", "--zorder", "1"],
        ["compute", "verlinde", "--surface", "P1xP1", "--bundle", "O(1)+", "--worder", "2"],
        ["verify", "localization", "--surface", "p3"],
    ]
    for argv in cases:
        assert run(argv) == 2, argv
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "usage" in captured.err


def test_engine_errors_fail_the_run(capsys):
    argv = ["compute", "omega", "--k", "1", "--worder", "3", "--zorder", "1", "--max-weight", "2"]
    code, payload = run_json(capsys, argv)
    assert code == 1
    assert payload["summary"]["fail"] == 1
    assert payload["reports"][0]["firstDiscrepancy"]["location"] == "WeightTooLarge"


def test_deterministic_output(capsys):
    argv = ["compute", "b4", "--r", "2", "--order", "4", "--method", "conjecture", "--method", "binomial"]
    outputs = []
    for jobs in ("1", "2"):
        assert run(argv + ["--jobs", jobs]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    payload = json.loads(outputs[0])
    assert payload["parameters"]["methods"] == ["binomial", "conjecture"]
    assert payload["results"]["binomial"] == payload["results"]["conjecture"]
    assert payload["results"]["binomial"][0] == ONE


def test_table_and_timing(capsys):
    assert run(["--format", "table", "compute", "omega", "--k", "1", "--worder", "1", "--zorder", "1"]) == 0
    table = capsys.readouterr().out.splitlines()
    assert table[0] == "compute omega  (version 0.1.0)"
    assert table[2] == "omega  (ordres w<=1, z1<=1)"

    code, payload = run_json(capsys, ["compute", "verlinde", "--surface", "P1xP1", "--bundle", "O",
                                      "--worder", "2", "--timing"])
    assert code == 0
    assert payload["elapsed"] >= 0


def test_verify_localization(capsys):
    code, payload = run_json(capsys, ["verify", "localization", "--surface", "P2"])
    assert code == 0
    assert payload["summary"]["fail"] == 0
    assert any(report["identity"] == "verlinde-trivial" for report in payload["reports"])


@pytest.mark.slow
def test_verify_closed_forms(capsys):
    code, payload = run_json(capsys, ["verify", "closed-forms", "--order", "4", "--quick"])
    assert code == 0
    assert payload["pass"] is True


@pytest.mark.slow
def test_verify_all_quick(capsys):
    code, payload = run_json(capsys, ["verify", "all", "--quick"])
    assert code == 0
    assert payload["summary"]["fail"] == 0
    identities = {report["identity"] for report in payload["reports"]}
    for identity in ("symmetry-theorem", "known-series", "b3-localization", "b4-localization",
                     "uv-operator", "differential-identity", "h-to-f-pipelines"):
        assert identity in identities, identity
