from __future__ import annotations

import itertools

import pytest

from bvengine import prof, setval, tambara
from bvengine.engines import stprof_engine
from bvengine.finbase import builtin
from bvengine.suites import optic_oracle


def test_optic_hom_i2_has_two_classes():
    q = tambara.optic_hom(builtin("I2"), 0, 0, 0, 0)
    assert len(q) == 2


def test_optic_category_sizes():
    O2 = tambara.build_optic(builtin("I2"))
    assert (O2.n_obj, O2.category.n_mor) == (1, 2)
    O3 = tambara.build_optic(builtin("I3"))
    assert (O3.n_obj, O3.category.n_mor) == (4, 8)
    assert tambara.validate_optic(O2) and tambara.validate_optic(O3)


def test_optic_hom_i3_matches_difference_rule():
    C = builtin("I3")
    O = tambara.build_optic(C)
    for (a, a2), (b, b2) in itertools.product(itertools.product(range(2), repeat=2), repeat=2):
        want = int((b - a) % 2 == (b2 - a2) % 2)
        assert O.hom_size(O.obj(a, a2), O.obj(b, b2)) == want == optic_oracle(C, a, a2, b, b2)


@pytest.mark.parametrize("name", ["I1", "I2", "I3"])
def test_engine_is_normal(name):
    e = stprof_engine(name)
    assert e.normal
    assert e.unit == e.seq_unit


def test_representable_carrier_on_i3():
    ctx = stprof_engine("I3").ctx
    y = tambara.representable_context(ctx, (0, 0))
    on = [ctx.split(e) for e in range(ctx.E.n_obj) if y.size(e) == 1]
    assert sorted(on) == [(0, 0), (1, 1)]
    assert all(y.size(e) <= 1 for e in range(ctx.E.n_obj))


def test_representables_tensor_on_i3():
    e = stprof_engine("I3")
    ctx = e.ctx
    for a, b in itertools.product(itertools.product(range(2), repeat=2), repeat=2):
        ya = tambara.representable_context(ctx, a)
        yb = tambara.representable_context(ctx, b)
        yab = tambara.representable_context(ctx, ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2))
        assert setval.find_iso(e.tensor(ya, yb), yab) is not None


@pytest.mark.parametrize("name", ["I2", "I3"])
def test_interventions_are_strong(name):
    e = stprof_engine(name)
    ctx = e.ctx
    for a in itertools.product(range(ctx.C.n_obj), repeat=2):
        Ca = tambara.intervention(ctx, a)
        assert tambara.strength_coherent(ctx, Ca)
        assert prof.bimodule_check(ctx, Ca)


@pytest.mark.parametrize("name", ["I2", "I3"])
def test_tensor_oracle_on_representables(name):
    e = stprof_engine(name)
    ctx = e.ctx
    ys = [setval.yoneda(ctx.E, k) for k in range(ctx.E.n_obj)]
    for P, Q in itertools.product(ys, repeat=2):
        maps, T = tambara.tensor_oracle(ctx, P, Q)
        assert [len(m) for m in maps] == list(T.sizes)


@pytest.mark.parametrize("name", ["I2", "I3"])
def test_sequence_lifts_agree(name):
    e = stprof_engine(name)
    ctx = e.ctx
    ys = [setval.yoneda(ctx.E, k) for k in range(ctx.E.n_obj)]
    for P, Q in itertools.product(ys, repeat=2):
        assert not prof.seq_right_lifted(ctx, P, Q, e.seq(P, Q))


def test_engine_self_test_i2():
    e = stprof_engine("I2")
    y = setval.yoneda(e.E, 0)
    assert e.self_test([y, e.unit]) == ["monoid-assoc", "monoid-unit", "unit-maps", "interchange"]
