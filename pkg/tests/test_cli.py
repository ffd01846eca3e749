from __future__ import annotations

import copy
import json

import pytest

from bvengine.cli import main, resolve_budget
from bvengine.finbase import BUILTINS
from bvengine.models import ConfigError


def test_validate_builtin(capsys):
    assert main(["validate", "I2"]) == 0
    assert "valid: I2 (1 objects, 2 morphisms)" in capsys.readouterr().out


@pytest.fixture
def broken(tmp_path):
    doc = copy.deepcopy(BUILTINS["I2"])
    doc["ids"] = {"*": "1"}
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(doc))
    return p


def test_validate_broken(broken, capsys):
    assert main(["validate", str(broken)]) == 2
    assert "IdentityViolation" in capsys.readouterr().out


def test_run_broken_writes_report(broken, tmp_path):
    report = tmp_path / "r.json"
    assert main(["run", "--instance", str(broken), "--report", str(report)]) == 2
    assert "IdentityViolation" in report.read_text()


def test_run_i2_all(capsys):
    assert main(["run", "--instance", "I2", "--suite", "all"]) == 0
    out = capsys.readouterr().out
    assert "0 failed, 0 errors" in out


def test_run_i4_chu(tmp_path):
    report = tmp_path / "r.json"
    assert main(["run", "--instance", "I4", "--suite", "chu", "--report", str(report)]) == 0
    doc = json.loads(report.read_text())
    assert all(r["status"] == "pass" for r in doc["results"])


def test_run_bad_config(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"corpus": ["missing"]}))
    assert main(["run", "--instance", "I2", "--suite", "chu", "--config", str(cfg)]) == 2


def test_eval(capsys):
    assert main(["eval", "--instance", "I2", "--formula", "a ; ~a"]) == 0
    out = capsys.readouterr().out
    assert "formula: a ; ~a" in out
    assert "first:   [2]" in out


def test_eval_errors(capsys):
    assert main(["eval", "--formula", "a *"]) == 2
    assert "position 3" in capsys.readouterr().err
    assert main(["eval", "--formula", "q"]) == 2
    assert "unbound atom 'q'" in capsys.readouterr().err


def test_eval_with_env(tmp_path, capsys):
    env = tmp_path / "env.json"
    env.write_text(json.dumps({"bindings": {"x": {"embed": ["0", "1"]}}}))
    assert main(["eval", "--instance", "I4", "--env", str(env), "--formula", "~x"]) == 0
    assert "first:   [4]" in capsys.readouterr().out


@pytest.mark.parametrize("name,args", [
    ("interchange", "a,a,a,a"),
    ("sequence", "a,a,a,a"),
])
def test_rules_on_i2(name, args, capsys):
    assert main(["rule", "--name", name, "--args", args]) == 0
    assert "[PASS ]" in capsys.readouterr().out


def test_switch_on_set_engine(tmp_path, capsys):
    env = tmp_path / "env.json"
    spec = {"chu": {"first": ["0", "1"], "second": ["0", "1"], "pairing": "and"}}
    env.write_text(json.dumps({"a": spec, "b": spec, "c": spec}))
    assert main(["rule", "--name", "switch", "--args", "a,b,c", "--instance", "I4",
                 "--env", str(env)]) == 0


def test_rule_arity_error(capsys):
    assert main(["rule", "--name", "switch", "--args", "a,b"]) == 2


def test_budget_resolution(monkeypatch):
    monkeypatch.delenv("BVENGINE_BUDGET", raising=False)
    assert resolve_budget(None) is None
    monkeypatch.setenv("BVENGINE_BUDGET", "500")
    assert resolve_budget(None) == 500
    assert resolve_budget(7) == 7
    monkeypatch.setenv("BVENGINE_BUDGET", "lots")
    with pytest.raises(ConfigError):
        resolve_budget(None)
    assert main(["run", "--instance", "I2", "--suite", "finbase"]) == 2


def test_tiny_budget_is_an_error(capsys):
    assert main(["run", "--instance", "I4", "--suite", "chu", "--budget", "3"]) == 2
