from __future__ import annotations

import json

import pytest

from bvengine.finbase import builtin
from bvengine.models import load_config, load_model
from bvengine.suites import (
    CheckResult, Falsified, exit_code, optic_oracle, require, run_check, run_suite,
    summarize, write_report,
)
from bvengine.setval import BudgetExceeded


def test_optic_oracle_values():
    assert optic_oracle(builtin("I2"), 0, 0, 0, 0) == 2
    assert optic_oracle(builtin("I1"), 0, 0, 0, 0) == 1
    assert optic_oracle(builtin("I3"), 0, 0, 1, 0) == 0


def test_run_check_classifies():
    assert run_check("ok", "X", lambda: {"n": 1}).status == "pass"

    def falsified():
        require(False, "broken", {"k": 1})

    def over():
        raise BudgetExceeded(5)

    r = run_check("bad", "X", falsified)
    assert r.status == "fail" and r.witness["data"] == {"k": 1}
    assert run_check("slow", "X", over).status == "error"
    with pytest.raises(ZeroDivisionError):
        run_check("crash", "X", lambda: 1 / 0)


def test_exit_codes_and_summary():
    p = CheckResult("a", "X", "pass")
    f = CheckResult("b", "X", "fail")
    e = CheckResult("c", "X", "error")
    assert exit_code([p]) == 0
    assert exit_code([p, f]) == 1
    assert exit_code([f, e]) == 2
    assert summarize([p, f, e]) == {"pass": 1, "fail": 1, "error": 1}
    assert "[FAIL ]" in f.line()


def test_falsified_carries_witness():
    with pytest.raises(Falsified) as info:
        require(1 == 2, "nope", [1, 2])
    assert info.value.witness == [1, 2]


@pytest.mark.parametrize("name", ["I1", "I2", "I3", "I4"])
def test_all_suites_pass(name, tmp_path):
    m = load_model(name)
    results = run_suite(m, "all", load_config(None, m))
    assert results and all(r.status == "pass" for r in results), [r.line() for r in results]
    out = tmp_path / "report.json"
    write_report(results, out)
    doc = json.loads(out.read_text())
    assert doc["summary"]["pass"] == len(results)
