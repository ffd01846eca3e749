"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a law is falsified, 2 on
configuration, schema or budget errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from .chu import ChuMorphism
from .finbase import CategoryError, load_instance_spec
from .models import ConfigError, Model, load_config, load_model
from .setval import BudgetExceeded
from .suites import (
    SUITES, CheckResult, exit_code, run_check, run_suite, summarize, write_report,
)
from .syntax import FormulaSyntaxError, UnboundAtom, parse, pretty

BUDGET_ENV = "BVENGINE_BUDGET"


def resolve_budget(flag: int | None) -> int | None:
    """``--budget`` wins over ``BVENGINE_BUDGET``; ``None`` keeps the
    instance default."""
    if flag is not None:
        if flag < 1:
            raise ConfigError("budget must be positive")
        return flag
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{BUDGET_ENV} must be positive")
    return value


def _load_bindings(path: str | None) -> dict[str, Any] | None:
    if path is None:
        return None
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read bindings: {exc}") from None
    if isinstance(doc, dict) and "bindings" in doc:
        doc = doc["bindings"]
    if not isinstance(doc, dict):
        raise ConfigError("bindings must be a JSON object")
    return doc


def _error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        spec = load_instance_spec(args.instance)
    except CategoryError as exc:
        print(f"invalid: {type(exc).__name__}: {exc}")
        return 2
    C = spec.category
    print(f"valid: {spec.name or args.instance} ({C.n_obj} objects, {C.n_mor} morphisms)")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    results: list[CheckResult]
    try:
        budget = resolve_budget(args.budget)
        model = load_model(args.instance, budget)
        config = load_config(args.config, model)
        results = run_suite(model, args.suite, config)
    except CategoryError as exc:
        results = [CheckResult("finbase.load", str(args.instance), "error",
                               {"error": type(exc).__name__, "message": str(exc)})]
    except (ConfigError, BudgetExceeded, FormulaSyntaxError, UnboundAtom) as exc:
        results = [CheckResult("config", str(args.instance), "error",
                               {"error": type(exc).__name__, "message": str(exc)})]
    for r in results:
        print(r.line())
    s = summarize(results)
    print(f"{s['pass']} passed, {s['fail']} failed, {s['error']} errors")
    if args.report:
        write_report(results, args.report)
    return exit_code(results)


def _model_from(args: argparse.Namespace) -> Model:
    return load_model(args.instance, resolve_budget(args.budget), _load_bindings(args.env))


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        model = _model_from(args)
        f = parse(args.formula)
        X = model.interpreter()(f)
    except FormulaSyntaxError as exc:
        return _error(str(exc))
    except UnboundAtom as exc:
        return _error(f"unbound atom {exc.args[0]!r}")
    except (CategoryError, ConfigError, BudgetExceeded) as exc:
        return _error(f"{type(exc).__name__}: {exc}")
    print(f"formula: {pretty(f)}")
    print(f"first:   {list(X.a.sizes)}")
    print(f"second:  {list(X.a2.sizes)}")
    return 0


RULE_ARITY = {"switch": 3, "sequence": 4, "interchange": 4}


def build_rule(model: Model, name: str, formulas: Sequence[str]) -> ChuMorphism:
    """The canonical Chu morphism of a rule instance."""
    if name not in RULE_ARITY:
        raise ConfigError(f"unknown rule {name!r}")
    if len(formulas) != RULE_ARITY[name]:
        raise ConfigError(f"rule {name} takes {RULE_ARITY[name]} formulas, got {len(formulas)}")
    interp = model.interpreter()
    objs = [interp(parse(f)) for f in formulas]
    chu = model.chu
    if name == "switch":
        return chu.switch(*objs)
    if name == "interchange":
        return chu.delta(*objs, check_unique=True)
    return chu.epsilon(*objs)


def cmd_rule(args: argparse.Namespace) -> int:
    formulas = [f.strip() for f in args.args.split(",")]
    try:
        model = _model_from(args)
    except (CategoryError, ConfigError, BudgetExceeded) as exc:
        return _error(f"{type(exc).__name__}: {exc}")

    def check() -> dict[str, Any]:
        try:
            h = build_rule(model, args.name, formulas)
        except (FormulaSyntaxError, UnboundAtom) as exc:
            raise ConfigError(str(exc)) from None
        return {"source": h.src.sizes(), "target": h.dst.sizes(),
                "f": list(h.f.src.sizes), "f2": list(h.f2.src.sizes)}

    res = run_check(f"rule.{args.name}", model.name, check)
    print(res.line())
    if res.status == "pass":
        for k, v in res.cardinalities.items():
            print(f"  {k}: {v}")
    if args.report:
        write_report([res], args.report)
    return exit_code([res])


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bvengine",
                                description="Check BV-category laws in Chu envelopes.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="validate an instance file")
    v.add_argument("instance", help="builtin name or path to an instance JSON file")
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("run", help="run law suites")
    r.add_argument("--instance", required=True)
    r.add_argument("--suite", default="all", choices=("all",) + SUITES)
    r.add_argument("--budget", type=int, default=None)
    r.add_argument("--config", default=None, help="suite configuration JSON")
    r.add_argument("--report", default=None, help="write a JSON report here")
    r.set_defaults(func=cmd_run)

    e = sub.add_parser("eval", help="interpret a formula")
    e.add_argument("--instance", default="I2")
    e.add_argument("--env", default=None, help="bindings JSON")
    e.add_argument("--formula", required=True)
    e.add_argument("--budget", type=int, default=None)
    e.set_defaults(func=cmd_eval)

    u = sub.add_parser("rule", help="build and check a rule instance")
    u.add_argument("--name", required=True, choices=tuple(RULE_ARITY))
    u.add_argument("--args", required=True, help="comma-separated formulas")
    u.add_argument("--instance", default="I2")
    u.add_argument("--env", default=None, help="bindings JSON")
    u.add_argument("--budget", type=int, default=None)
    u.add_argument("--report", default=None)
    u.set_defaults(func=cmd_rule)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        return _error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
