"""Acceptance criteria 1 to 11.

Each test prints one ``PASS``/``FAIL`` line with its wall-clock time, shown
even under output capture.
"""
from __future__ import annotations

import contextlib
import itertools
import time

import pytest

from bvengine import tambara
from bvengine.suites import (
    check_additives, check_distributors, check_naturality, check_normality,
    check_self_duality, check_star_autonomy, optic_oracle,
)
from bvengine.syntax import Neg, Par, Tensor, formula_corpus, parse, pretty

from conftest import corpus, model


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number: int, title: str, limit: float):
        start = time.perf_counter()
        status, detail = "FAIL", ""
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit:.0f}s"
            status = "PASS"
        except BaseException as exc:
            detail = f" ({type(exc).__name__}: {exc})"
            raise
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\n{status} criterion {number:2d}: {title} [{elapsed:.2f}s]{detail}")
    return run


def union_find_optics(C, x: int, x2: int, y: int, y2: int) -> int:
    """Optic count by merging representatives with a plain union-find."""
    reps = [(m, f, g) for m in range(C.n_obj)
            for f in C.hom(y, C.tensor(m, x)) for g in C.hom(C.tensor(m, x2), y2)]
    parent = {r: r for r in reps}

    def find(r):
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for j in range(C.n_mor):
        s, t = C.src[j], C.dst[j]
        for f in C.hom(y, C.tensor(s, x)):
            for g in C.hom(C.tensor(t, x2), y2):
                u = (t, C.compose(C.tensor_m(j, C.ids[x]), f), g)
                v = (s, f, C.compose(g, C.tensor_m(j, C.ids[x2])))
                parent[find(u)] = find(v)
    return len({find(r) for r in reps})


def test_criterion_01_seq_self_duality(criterion):
    with criterion(1, "strict self-duality of the sequence on I2, I3, I4", 30):
        for name in ("I2", "I3", "I4"):
            check_self_duality(model(name).chu, corpus(name))


def test_criterion_02_star_autonomy(criterion):
    with criterion(2, "star-autonomy counts and transpose naturality", 120):
        for name in ("I2", "I3", "I4"):
            chu, objs = model(name).chu, corpus(name)
            counts = check_star_autonomy(chu, objs)
            assert all(lhs == rhs for lhs, rhs in counts.values())
            # closed form |Chu(A⊗B, C)| = |Chu(A, [B, C])| on all triples
            for A, B, C in itertools.product(objs, repeat=3):
                assert len(chu.hom_set(chu.tensor(A, B), C)) == len(chu.hom_set(A, chu.hom(B, C)))
            assert check_naturality(chu, objs)["squares"] > 0


def test_criterion_03_distributors(criterion):
    with criterion(3, "interchange and sequence maps with unique mediators", 120):
        for name in ("I2", "I3", "I4"):
            out = check_distributors(model(name).chu, corpus(name))
            assert out["quadruples"] == len(corpus(name)) ** 4


def test_criterion_04_normality(criterion):
    with criterion(4, "normal units and isomix over strong profunctors", 10):
        for name in ("I2", "I3"):
            chu = model(name).chu
            assert chu.unit() == chu.seq_unit()
            check_normality(chu)


def test_criterion_05_lemma_par(criterion):
    with criterion(5, "par of faithful events is the combined event", 60):
        for name in ("I2", "I3"):
            env = model(name).envelope
            for a, b in itertools.product(env.objects(), repeat=2):
                iso = env.lemma_par(a, b)
                chu = env.chu
                assert chu.compose(iso.backward, iso.forward) == chu.identity(iso.forward.src)
                assert chu.compose(iso.forward, iso.backward) == chu.identity(iso.forward.dst)


def test_criterion_06_first_order_collapse(criterion):
    with criterion(6, "first-order tensor, sequence and par coincide on I2", 30):
        env = model("I2").envelope
        for a, b in itertools.product(range(env.C.n_obj), repeat=2):
            certs = env.first_order_collapse(a, b)
            assert set(certs) == {"tensor-seq", "seq-par", "tensor-par"}
            for iso in certs.values():
                assert env.chu.compose(iso.backward, iso.forward) == env.chu.identity(iso.forward.src)


def test_criterion_07_optic_oracle(criterion):
    with criterion(7, "optic hom counts agree with a union-find oracle", 10):
        O2 = model("I2").engine.ctx.optic
        C2 = model("I2").spec.category
        assert O2.hom_size(0, 0) == 2 == union_find_optics(C2, 0, 0, 0, 0)
        ctx3 = model("I3").engine.ctx
        C3, O3 = ctx3.C, ctx3.optic
        for (a, a2), (b, b2) in itertools.product(itertools.product(range(2), repeat=2), repeat=2):
            want = int((b - a) % 2 == (b2 - a2) % 2)
            got = O3.hom_size(O3.obj(a, a2), O3.obj(b, b2))
            assert got == want == union_find_optics(C3, a, a2, b, b2) == optic_oracle(C3, a, a2, b, b2)
        for O in (O2, O3):
            E = O.category
            for f in range(E.n_mor):
                for g in E.out_mors[E.dst[f]]:
                    for h in E.out_mors[E.dst[g]]:
                        assert E.comp[h][E.comp[g][f]] == E.comp[E.comp[h][g]][f]


def test_criterion_08_tensor_oracle(criterion):
    with criterion(8, "optic Day tensor is the quotiented profunctor tensor on I2", 60):
        m = model("I2")
        ctx = m.engine.ctx
        mods = []
        for A in corpus("I2"):
            mods += [M for M in (A.a, A.a2) if M not in mods]
        for P, Q in itertools.product(mods, repeat=2):
            maps, T = tambara.tensor_oracle(ctx, P, Q, m.engine.tensor(P, Q))
            assert [len(mp) for mp in maps] == list(T.sizes)


def test_criterion_09_supermaps(criterion):
    with criterion(9, "supermaps are optics and first-order maps are C(a,b)", 30):
        env = model("I2").envelope
        o = env.objects()[0]
        rep = env.check_optic_supermaps(o, o)
        assert rep.ok and rep.morphisms == rep.expected == 2
        for a, b in itertools.product(range(env.C.n_obj), repeat=2):
            rep = env.check_first_order_supermaps(a, b)
            assert rep.ok and rep.morphisms == len(env.C.hom(a, b))


def test_criterion_10_additives(criterion):
    with criterion(10, "products and coproducts on I4 with strict duality", 30):
        chu, objs = model("I4").chu, corpus("I4")
        assert check_additives(chu, objs)["cones"] > 0
        for A, B in itertools.product(objs, repeat=2):
            assert chu.dual(chu.product(A, B)[0]) == chu.coproduct(chu.dual(A), chu.dual(B))[0]


def test_criterion_11_parser(criterion):
    with criterion(11, "parser round trip and strict negation laws", 10):
        forms = formula_corpus(200)
        assert len(forms) == 200
        for f in forms:
            assert parse(pretty(f)) == f
        interp = model("I2").interpreter()
        for f, g in zip(forms, forms[1:] + forms[:1]):
            assert interp(Neg(Neg(f))) == interp(f)
            assert interp(Neg(Tensor(f, g))) == interp(Par(Neg(f), Neg(g)))
