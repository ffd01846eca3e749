"""Law suites and machine-readable reports.

Each check produces a :class:`CheckResult` with a status of ``pass``,
``fail`` (a law was falsified; the witness says where) or ``error`` (a
budget or configuration problem).  Suites are plain lists of checks run in
order; every check is independent of the others.
"""
from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable

from . import prof, tambara
from .chu import Chu, ChuObject, IsoNotFound, NotChuMorphism, TypeMismatch
from .engines import CopresheafEngine, EngineError
from .finbase import CategoryError, FinCategory, validate_category
from .models import ConfigError, Model
from .prof import ProfContext
from .setval import (
    BudgetExceeded, IllDefinedMap, MediatorNotFound, NotNatural, compose_nat, identity_nat,
)

SUITES = ("finbase", "prof", "tambara", "chu", "events")

FALSIFICATIONS = (NotChuMorphism, IsoNotFound, MediatorNotFound, IllDefinedMap, NotNatural,
                  CategoryError, EngineError, TypeMismatch, ValueError)


class Falsified(Exception):
    """A law check found a counterexample."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


@dataclass
class CheckResult:
    check: str
    instance: str
    status: str
    witness: Any = None
    cardinalities: dict[str, Any] = field(default_factory=dict)
    millis: float = 0.0

    def line(self) -> str:
        tail = f"  witness={self.witness!r}" if self.witness is not None else ""
        return f"[{self.status.upper():5}] {self.instance}:{self.check} ({self.millis:.0f} ms){tail}"


def run_check(name: str, instance: str, fn: Callable[[], dict[str, Any] | None]) -> CheckResult:
    """Run ``fn`` and classify the outcome."""
    t = time.perf_counter()
    status, witness, cards = "pass", None, {}
    try:
        cards = fn() or {}
    except Falsified as exc:
        status, witness = "fail", {"message": str(exc), "data": _jsonable(exc.witness)}
    except BudgetExceeded as exc:
        status, witness = "error", {"message": str(exc)}
    except ConfigError as exc:
        status, witness = "error", {"message": str(exc)}
    except FALSIFICATIONS as exc:
        status = "fail"
        witness = {"error": type(exc).__name__, "message": str(exc),
                   "data": _jsonable(getattr(exc, "witness", None)
                                     or getattr(exc, "cardinalities", None))}
    millis = (time.perf_counter() - t) * 1000.0
    return CheckResult(name, instance, status, witness, _jsonable(cards), round(millis, 3))


def _jsonable(x: Any) -> Any:
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    return repr(x)


def write_report(results: list[CheckResult], path: str | Path) -> None:
    doc = {"results": [asdict(r) for r in results],
           "summary": summarize(results)}
    Path(path).write_text(json.dumps(doc, indent=2, ensure_ascii=False), encoding="utf-8")


def summarize(results: Iterable[CheckResult]) -> dict[str, int]:
    out = {"pass": 0, "fail": 0, "error": 0}
    for r in results:
        out[r.status] += 1
    return out


def exit_code(results: Iterable[CheckResult]) -> int:
    s = summarize(results)
    if s["error"]:
        return 2
    return 1 if s["fail"] else 0


def require(cond: bool, message: str, witness: Any = None) -> None:
    if not cond:
        raise Falsified(message, witness)


# ---------------------------------------------------------------------------
# independent optic oracle


def optic_oracle(C: FinCategory, x: int, x2: int, y: int, y2: int) -> int:
    """Number of optics ``(x,x') → (y,y')`` by graph search over the sliding
    relation, without the shared quotient code."""
    nodes = [(m, f, g) for m in range(C.n_obj)
             for f in C.hom(y, C.tensor(m, x)) for g in C.hom(C.tensor(m, x2), y2)]
    adj: dict[tuple, set] = {v: set() for v in nodes}
    for j in range(C.n_mor):
        s, t = C.src[j], C.dst[j]
        for f in C.hom(y, C.tensor(s, x)):
            for g in C.hom(C.tensor(t, x2), y2):
                u = (t, C.compose(C.tensor_m(j, C.ids[x]), f), g)
                v = (s, f, C.compose(g, C.tensor_m(j, C.ids[x2])))
                adj[u].add(v)
                adj[v].add(u)
    seen: set = set()
    count = 0
    for v in nodes:
        if v in seen:
            continue
        count += 1
        stack = [v]
        seen.add(v)
        while stack:
            w = stack.pop()
            for z in adj[w] - seen:
                seen.add(z)
                stack.append(z)
    return count


# ---------------------------------------------------------------------------
# suites


def finbase_checks(model: Model) -> list[tuple[str, Callable]]:
    C = model.spec.category

    def validate():
        validate_category(C)
        return C.describe()

    return [("finbase.validate", validate)]


def prof_checks(model: Model) -> list[tuple[str, Callable]]:
    C = model.spec.category
    ctx = ProfContext(C)
    eng = CopresheafEngine(ctx, budget=model.engine.budget, name=f"Prof({model.name})")
    objs = [eng.unit, ctx.seq_unit]

    def unit_laws():
        for a in objs:
            for there, back in ((eng.lunit(a), eng.lunit_inv(a)), (eng.runit(a), eng.runit_inv(a)),
                                (eng.seq_lunit(a), eng.seq_lunit_inv(a)),
                                (eng.seq_runit(a), eng.seq_runit_inv(a))):
                require(compose_nat(back, there) == identity_nat(there.src), "unitor not invertible")
        return {"objects": [a.sizes for a in objs]}

    def assoc_laws():
        for a, b, c in itertools.product(objs, repeat=3):
            f, g = eng.assoc(a, b, c), eng.assoc_inv(a, b, c)
            require(compose_nat(g, f) == identity_nat(f.src), "associator not invertible")
            f, g = eng.seq_assoc(a, b, c), eng.seq_assoc_inv(a, b, c)
            require(compose_nat(g, f) == identity_nat(f.src), "⊲ associator not invertible")
        return {}

    def bimodule():
        for a in objs:
            require(prof.bimodule_check(ctx, a), "bimodule law fails")
        return {}

    def interchange():
        eng.self_test(objs)
        return {}

    return [("prof.unitors", unit_laws), ("prof.associators", assoc_laws),
            ("prof.bimodule", bimodule), ("prof.interchange", interchange)]


def _modules(model: Model, corpus: list[ChuObject]) -> list:
    seen, out = set(), []
    for A in corpus:
        for M in (A.a, A.a2):
            if M not in seen:
                seen.add(M)
                out.append(M)
    return out


def tambara_checks(model: Model, corpus: list[ChuObject]) -> list[tuple[str, Callable]]:
    if model.kind != "stprof":
        return []
    ctx = model.engine.ctx
    C, O = ctx.C, ctx.optic
    mods = _modules(model, corpus)

    def optic_homs():
        table = {}
        for s in range(O.n_obj):
            for d in range(O.n_obj):
                x, x2 = ctx.split(s)
                y, y2 = ctx.split(d)
                got, want = O.hom_size(s, d), optic_oracle(C, x, x2, y, y2)
                require(got == want, "optic hom size disagrees with the oracle",
                        {"src": (x, x2), "dst": (y, y2), "got": got, "oracle": want})
                table[f"{x},{x2}->{y},{y2}"] = got
        return table

    def optic_category():
        tambara.validate_optic(O)
        E = O.category
        for f in range(E.n_mor):
            for g in E.out_mors[E.dst[f]]:
                for h in E.out_mors[E.dst[g]]:
                    require(E.comp[h][E.comp[g][f]] == E.comp[E.comp[h][g]][f],
                            "optic composition not associative", (f, g, h))
        return {"objects": E.n_obj, "morphisms": E.n_mor}

    def strengths():
        for M in mods:
            require(tambara.strength_coherent(ctx, M), "strength incoherent")
        return {"modules": len(mods)}

    def tensor_oracle():
        sizes = []
        for P, Q in itertools.product(mods, repeat=2):
            maps, T = tambara.tensor_oracle(ctx, P, Q, model.engine.tensor(P, Q))
            sizes.append(T.sizes)
        return {"pairs": len(sizes)}

    def right_lift():
        for P, Q in itertools.product(mods, repeat=2):
            bad = prof.seq_right_lifted(ctx, P, Q, model.engine.seq(P, Q))
            require(not bad, "left and right lifted strengths differ", bad[:3])
        return {"pairs": len(mods) ** 2}

    def engine_laws():
        return {"passed": model.engine.self_test(mods)}

    return [("tambara.optic_homs", optic_homs), ("tambara.optic_category", optic_category),
            ("tambara.strength", strengths), ("tambara.tensor_oracle", tensor_oracle),
            ("tambara.right_lift", right_lift), ("tambara.engine", engine_laws)]


# -- Chu ---------------------------------------------------------------------


def check_self_duality(chu: Chu, corpus: list[ChuObject]) -> dict[str, Any]:
    for A, B in itertools.product(corpus, repeat=2):
        lhs, rhs = chu.dual(chu.seq(A, B)), chu.seq(chu.dual(A), chu.dual(B))
        require(lhs.a == rhs.a and lhs.a2 == rhs.a2 and lhs.r == rhs.r,
                "(A⊲B)* differs from A*⊲B*", {"A": A.sizes(), "B": B.sizes()})
    return {"pairs": len(corpus) ** 2}


def check_involution(chu: Chu, corpus: list[ChuObject]) -> dict[str, Any]:
    for A in corpus:
        require(chu.dual(chu.dual(A)) == A, "double dual differs", A.sizes())
        idA = chu.identity(A)
        require(chu.dual_mor(chu.dual_mor(idA)) == idA, "double dual of identity differs")
    for A, B in itertools.product(corpus, repeat=2):
        require(chu.dual(chu.tensor(A, B)) == chu.par(chu.dual(A), chu.dual(B)),
                "De Morgan fails", {"A": A.sizes(), "B": B.sizes()})
    return {"objects": len(corpus)}


def check_star_autonomy(chu: Chu, corpus: list[ChuObject]) -> dict[str, Any]:
    counts = {}
    for (i, A), (j, B), (k, C) in itertools.product(enumerate(corpus), repeat=3):
        lhs, rhs = chu.star_autonomy(A, B, C)
        counts[f"{i},{j},{k}"] = [lhs, rhs]
    return counts


def check_naturality(chu: Chu, corpus: list[ChuObject]) -> dict[str, Any]:
    """Naturality of the transpose in ``A`` and in ``C``."""
    squares = 0
    homs = {(i, j): chu.hom_set(X, Y) for (i, X), (j, Y)
            in itertools.product(enumerate(corpus), repeat=2)}
    for (ia, A), (ib, B), (ic, C) in itertools.product(enumerate(corpus), repeat=3):
        AB = chu.tensor(A, B)
        hs = chu.hom_set(AB, chu.dual(C))
        for h in hs:
            Th = chu.transpose(A, B, C, h)
            for i2, A2 in enumerate(corpus):
                for k in homs[(i2, ia)]:
                    lhs = chu.transpose(A2, B, C, chu.compose(h, chu.tensor_mor(k, chu.identity(B))))
                    require(lhs == chu.compose(Th, k), "transpose not natural in A",
                            {"A": ia, "B": ib, "C": ic, "A'": i2})
                    squares += 1
            for i2, C2 in enumerate(corpus):
                for l in homs[(i2, ic)]:
                    lhs = chu.transpose(A, B, C2, chu.compose(chu.dual_mor(l), h))
                    rhs = chu.compose(chu.dual_mor(chu.tensor_mor(chu.identity(B), l)), Th)
                    require(lhs == rhs, "transpose not natural in C",
                            {"A": ia, "B": ib, "C": ic, "C'": i2})
                    squares += 1
    return {"squares": squares}


def check_distributors(chu: Chu, corpus: list[ChuObject]) -> dict[str, Any]:
    n = 0
    for A, B, C, D in itertools.product(corpus, repeat=4):
        chu.delta(A, B, C, D, check_unique=True)
        e = chu.epsilon(A, B, C, D)
        require(e == chu.dual_mor(chu.delta(chu.dual(A), chu.dual(C), chu.dual(B), chu.dual(D))),
                "sequence map is not the dual interchange")
        n += 1
    return {"quadruples": n}


def check_switch(chu: Chu, corpus: list[ChuObject]) -> dict[str, Any]:
    n = 0
    for A, B, C in itertools.product(corpus, repeat=3):
        chu.switch(A, B, C)
        n += 1
    return {"triples": n}


def check_units(chu: Chu, corpus: list[ChuObject]) -> dict[str, Any]:
    I = chu.unit()
    for A in corpus:
        for lhs in (chu.tensor(I, A), chu.tensor(A, I)):
            chu.require_iso(lhs, A)
        for lhs in (chu.par(chu.par_unit(), A), chu.par(A, chu.par_unit())):
            chu.require_iso(lhs, A)
        for lhs in (chu.seq(chu.seq_unit(), A), chu.seq(A, chu.seq_unit())):
            chu.require_iso(lhs, A)
    chu.require_iso(chu.embed(chu.e.unit), I)
    return {"unit": I.sizes(), "seq_unit": chu.seq_unit().sizes(),
            "par_unit": chu.par_unit().sizes()}


def check_normality(chu: Chu) -> dict[str, Any]:
    require(chu.unit() == chu.seq_unit(), "⊗ and ⊲ units differ")
    iso = chu.isomix()
    require(chu.compose(iso.backward, iso.forward) == chu.identity(chu.unit()), "isomix left")
    require(chu.compose(iso.forward, iso.backward) == chu.identity(chu.par_unit()), "isomix right")
    return {"unit": chu.unit().sizes()}


def check_additives(chu: Chu, corpus: list[ChuObject]) -> dict[str, Any]:
    cones = 0
    for A, B in itertools.product(corpus, repeat=2):
        P, p1, p2 = chu.product(A, B)
        S, i1, i2 = chu.coproduct(A, B)
        require(chu.dual(P) == chu.coproduct(chu.dual(A), chu.dual(B))[0],
                "(A×B)* differs from A*+B*")
        for X in corpus:
            into = chu.hom_set(X, P)
            hs, ks = chu.hom_set(X, A), chu.hom_set(X, B)
            require(len(into) == len(hs) * len(ks), "product hom count",
                    {"X→P": len(into), "X→A": len(hs), "X→B": len(ks)})
            for h, k in itertools.product(hs, ks):
                m = chu.pair(P, h, k)
                require(chu.compose(p1, m) == h and chu.compose(p2, m) == k, "pairing")
                cones += 1
            out = chu.hom_set(S, X)
            hs, ks = chu.hom_set(A, X), chu.hom_set(B, X)
            require(len(out) == len(hs) * len(ks), "coproduct hom count",
                    {"S→X": len(out), "A→X": len(hs), "B→X": len(ks)})
            for h, k in itertools.product(hs, ks):
                m = chu.copair(S, h, k)
                require(chu.compose(m, i1) == h and chu.compose(m, i2) == k, "copairing")
                cones += 1
    return {"cones": cones}


def chu_checks(model: Model, corpus: list[ChuObject]) -> list[tuple[str, Callable]]:
    chu = model.chu
    out = [
        ("chu.involution", lambda: check_involution(chu, corpus)),
        ("chu.seq_self_duality", lambda: check_self_duality(chu, corpus)),
        ("chu.star_autonomy", lambda: check_star_autonomy(chu, corpus)),
        ("chu.naturality", lambda: check_naturality(chu, corpus)),
        ("chu.distributors", lambda: check_distributors(chu, corpus)),
        ("chu.switch", lambda: check_switch(chu, corpus)),
        ("chu.units", lambda: check_units(chu, corpus)),
        ("chu.additives", lambda: check_additives(chu, corpus)),
    ]
    if model.kind == "stprof":
        out.append(("chu.normality", lambda: check_normality(chu)))
    return out


# -- events ------------------------------------------------------------------


def events_checks(model: Model, pairs: list) -> list[tuple[str, Callable]]:
    env = model.envelope
    if env is None:
        return []
    ps = [(model.pair(p), model.pair(q)) for p, q in pairs]
    objs = env.objects()
    C = env.C

    def lemma_par():
        for a, b in ps:
            env.lemma_par(a, b)
        return {"pairs": len(ps)}

    def first_order():
        for x, y in itertools.product(range(C.n_obj), repeat=2):
            env.first_order_collapse(x, y)
            rep = env.check_first_order_supermaps(x, y)
            require(rep.ok, "first-order morphisms do not match C(a,b)", rep)
        return {"pairs": C.n_obj ** 2}

    def supermaps():
        cards = {}
        for a, b in ps:
            rep = env.check_optic_supermaps(a, b)
            require(rep.ok, "supermaps do not match optics", rep)
            cards[f"{a}->{b}"] = rep.morphisms
            for c in objs:
                for chk in (env.check_comb_supermaps, env.check_seq_supermaps):
                    rep = chk(a, b, c)
                    require(rep.ok, f"{rep.name} characterisation fails", rep)
        return cards

    def joins():
        cards = {}
        for a, b in ps:
            cards[f"{a},{b}"] = env.par_bounds(a, b)
        return cards

    def local_combs():
        cards = {}
        for a, b in ps:
            lc = env.local_combs(a, b)
            T = env.chu.tensor(env.faithful(a), env.faithful(b))
            require(lc.obj == T.a2, "local combs differ from the tensor context")
            cards[f"{a},{b}"] = lc.obj.sizes
        return cards

    return [("events.lemma_par", lemma_par), ("events.first_order", first_order),
            ("events.supermaps", supermaps), ("events.local_combs", local_combs),
            ("events.joins", joins)]


def build_checks(model: Model, suite: str, config: dict[str, Any]) -> list[tuple[str, Callable]]:
    if suite not in SUITES + ("all",):
        raise ConfigError(f"unknown suite {suite!r}")
    chosen = SUITES if suite == "all" else (suite,)
    corpus = model.objects(list(config.get("corpus", [])))
    checks: list[tuple[str, Callable]] = []
    for s in chosen:
        if s == "finbase":
            checks += finbase_checks(model)
        elif s == "prof":
            checks += prof_checks(model)
        elif s == "tambara":
            checks += tambara_checks(model, corpus)
        elif s == "chu":
            checks += chu_checks(model, corpus)
        elif s == "events":
            checks += events_checks(model, list(config.get("pairs", [])))
    return checks


def run_suite(model: Model, suite: str, config: dict[str, Any]) -> list[CheckResult]:
    return [run_check(name, model.name, fn) for name, fn in build_checks(model, suite, config)]


__all__ = [
    "CheckResult", "Falsified", "SUITES", "build_checks", "check_additives",
    "check_distributors", "check_involution", "check_naturality", "check_normality",
    "check_self_duality", "check_star_autonomy", "check_switch", "check_units",
    "exit_code", "optic_oracle", "run_check", "run_suite", "summarize", "write_report",
]
