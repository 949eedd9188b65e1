import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from nonadditive import __version__
from nonadditive.cli import evaluate_expectations, main, resolve
from nonadditive.config import parse_config, parse_rule, parse_trig
from nonadditive.errors import FormatError

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run_cfg(tmp_path, text, *extra, name="exp.cfg"):
    cfg = tmp_path / name
    cfg.write_text(text)
    out = tmp_path / "out"
    code = main(["--config", str(cfg), "--out", str(out), *extra])
    return code, out


def copy_inputs(tmp_path):
    for p in (CONFIGS / "inputs").iterdir():
        (tmp_path / p.name).write_text(p.read_text())


@pytest.mark.parametrize("name", sorted(p.name for p in CONFIGS.glob("*.cfg")
                                        if p.name != "reproduce.cfg"))
def test_shipped_configs_pass(tmp_path, name):
    assert main(["--config", str(CONFIGS / name), "--out", str(tmp_path), "--check"]) == 0


def test_pressure_zero_report(tmp_path):
    copy_inputs(tmp_path)
    code, out = run_cfg(tmp_path, "command = pressure\npotential = zero.pot\nN = 18\n")
    assert code == 0
    rep = json.loads((out / "pressure.json").read_text())
    assert abs(rep["result"]["value"] - math.log(2)) <= 1e-12
    assert rep["version"] == __version__
    assert rep["config"]["potential"] == "zero.pot"
    assert rep["thresholds"]["bounded_ratio"] == 0.75
    lines = (out / "pressure_logZ.csv").read_text().splitlines()
    assert lines[0] == "n,value" and len(lines) == 19
    assert "\r" not in (out / "pressure_logZ.csv").read_bytes().decode()
    info = json.loads((out / "run-info.json").read_text())
    assert info["command"] == "pressure" and "time" not in json.dumps(info)


def test_sqrt_battery_verdict(tmp_path):
    code, out = run_cfg(tmp_path, "sequence = explicit\nrule = sqrt\nN = 24\nP = 12\n",
                        "battery")
    assert code == 0
    rep = json.loads((out / "battery.json").read_text())
    assert rep["result"]["verdict"] == "not-almost-additive"


def test_outputs_byte_identical(tmp_path):
    copy_inputs(tmp_path)
    text = "command = battery\npotential = coboundary.pot\nN = 16\nP = 8\n"
    _, a = run_cfg(tmp_path, text)
    first = {p.name: p.read_bytes() for p in a.iterdir()}
    _, b = run_cfg(tmp_path, text)
    second = {p.name: p.read_bytes() for p in b.iterdir()}
    assert first == second and len(first) >= 3


def test_threshold_override_recorded(tmp_path):
    copy_inputs(tmp_path)
    code, out = run_cfg(tmp_path, "command = battery\npotential = coboundary.pot\nN = 12\n"
                                  "P = 6\nbounded_ratio = 0.9\n")
    assert code == 0
    rep = json.loads((out / "battery.json").read_text())
    assert rep["thresholds"]["bounded_ratio"] == 0.9


def test_check_failure_exit_1(tmp_path, capsys):
    copy_inputs(tmp_path)
    text = "command = pressure\npotential = zero.pot\nexpect.value = 1.0\n"
    assert run_cfg(tmp_path, text)[0] == 0
    assert run_cfg(tmp_path, text, "--check")[0] == 1
    assert "check failed: value" in capsys.readouterr().err


@pytest.mark.parametrize("text, fragment", [
    ("command = pressure\nhorizon = 3\n", ":2: unknown key 'horizon'"),
    ("command = pressure\nN = 3\nN = 4\n", ":3: duplicate key 'N'"),
    ("command = pressure\nN = -3\n", ":2: N must be positive"),
    ("command = pressure\npotential = missing.pot\n", "file not found"),
    ("command = fly\n", "unknown command"),
    ("command = pressure\nmode = solve\n", "not valid for command"),
    ("command = battery\nvanish_rel = 0\n", "must be positive"),
    ("N 3\n", "expected 'key = value'"),
])
def test_config_errors_exit_2(tmp_path, capsys, text, fragment):
    code, _ = run_cfg(tmp_path, text)
    assert code == 2
    assert fragment in capsys.readouterr().err


def test_bad_input_file_exit_2(tmp_path, capsys):
    (tmp_path / "bad.pot").write_text("alphabet 2\nwindow 1\n0 1\n0 2\n")
    code, _ = run_cfg(tmp_path, "command = pressure\npotential = bad.pot\n")
    assert code == 2
    err = capsys.readouterr().err
    assert "bad.pot:4" in err and "duplicate word" in err


def test_usage_errors(tmp_path, capsys):
    assert main([]) == 2
    copy_inputs(tmp_path)
    code, _ = run_cfg(tmp_path, "command = pressure\npotential = zero.pot\n", "battery")
    assert code == 2 and "conflicts" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        main(["teleport"])
    assert exc.value.code == 2


def test_modes(tmp_path):
    copy_inputs(tmp_path)
    for mode, key in [("solve", "solution"), ("meancycle", "cycle"), ("decompose", "residual")]:
        code, out = run_cfg(tmp_path, f"command = cohomology\nmode = {mode}\n"
                                      "potential = coboundary.pot\n")
        assert code == 0
        assert key in json.loads((out / "cohomology.json").read_text())["result"]
    for mode in ("sequence", "distortion", "fl", "kln"):
        code, out = run_cfg(tmp_path, f"command = cocycle\nmode = {mode}\n"
                                      "generator = stochastic.gen\nN = 6\n")
        assert code == 0
    code, out = run_cfg(tmp_path, "command = equivalence\npotential = zero.pot\n"
                                  "potential2 = zero.pot\nalpha2 = 0.5\nN = 10\n")
    assert code == 0
    code, out = run_cfg(tmp_path, "command = classify\nweights = markov.weights\nN = 10\n")
    assert code == 0


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "nonadditive.cli", "--version"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == __version__


def test_resolve_and_expectations():
    data = {"a": {"b": [1, {"c": "x"}]}, "flag": True, "v": 0.5}
    assert resolve(data, "a.b.1.c") == "x"
    with pytest.raises(KeyError):
        resolve(data, "a.z")
    checks = evaluate_expectations(data, {"flag": True, "v": 0.5 + 1e-12, "a.b.0": 2,
                                          "missing": 1}, 1e-9)
    got = {c["check"]: c["passed"] for c in checks}
    assert got == {"a.b.0": False, "flag": True, "missing": False, "v": True}


def test_parse_helpers():
    assert parse_rule("sqrt") == ("sqrt", 1.0)
    assert parse_rule("linear:0.5") == ("linear", 0.5)
    with pytest.raises(ValueError):
        parse_rule("cube")
    assert parse_trig("1:1:0; 2:0:0.5") == [(1.0, 1.0, 0.0), (2.0, 0.0, 0.5)]
    cfg = parse_config("command = battery\nexpect.x = TRUE\nexpect.y = 3\nexpect.z = abc\n")
    assert cfg.expect == {"x": True, "y": 3, "z": "abc"}
    with pytest.raises(FormatError):
        parse_config("trig = 1:2\n")
