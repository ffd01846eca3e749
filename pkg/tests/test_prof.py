from __future__ import annotations

import itertools

import pytest

from bvengine import prof, setval
from bvengine.engines import CopresheafEngine
from bvengine.finbase import builtin
from bvengine.prof import ProfContext
from bvengine.setval import compose_nat, identity_nat


@pytest.fixture(scope="module", params=["I1", "I2", "I3"])
def eng(request):
    return CopresheafEngine(ProfContext(builtin(request.param)))


def objects(e: CopresheafEngine) -> list:
    H = setval.hom_bifunctor(e.ctx.C)
    return [e.unit, e.seq_unit, H]


def test_units_on_i2():
    e = CopresheafEngine(ProfContext(builtin("I2")))
    # I(x,x') = C(x,I)×C(I,x') and the ⊲ unit is the hom profunctor
    assert e.unit.sizes == (4,)
    assert e.seq_unit.sizes == (2,)
    assert e.seq_unit == setval.hom_bifunctor(builtin("I2"))
    assert not e.normal


def test_day_tensor_of_hom_on_i2_is_stable():
    C = builtin("I2")
    ctx = ProfContext(C)
    H = setval.hom_bifunctor(C)
    T1 = prof.day_tensor(ctx.E, H, H)
    T2 = prof.day_tensor(ctx.E, H, H)
    assert T1 == T2
    assert T1.sizes == (2,)
    assert setval.validate_functor(T1)


def test_internal_hom_on_i2():
    e = CopresheafEngine(ProfContext(builtin("I2")))
    H = setval.hom_bifunctor(builtin("I2"))
    assert e.ihom(H, H).sizes == (2,)


def test_unitors_invertible(eng):
    for a in objects(eng):
        for there, back in ((eng.lunit(a), eng.lunit_inv(a)), (eng.runit(a), eng.runit_inv(a)),
                            (eng.seq_lunit(a), eng.seq_lunit_inv(a)),
                            (eng.seq_runit(a), eng.seq_runit_inv(a))):
            assert compose_nat(back, there) == identity_nat(there.src)
            assert compose_nat(there, back) == identity_nat(back.src)


def test_associators_invertible(eng):
    for a, b, c in itertools.product(objects(eng)[1:], repeat=3):
        f, g = eng.assoc(a, b, c), eng.assoc_inv(a, b, c)
        assert compose_nat(g, f) == identity_nat(f.src)
        f, g = eng.seq_assoc(a, b, c), eng.seq_assoc_inv(a, b, c)
        assert compose_nat(g, f) == identity_nat(f.src)


def test_symmetry_involutive(eng):
    for a, b in itertools.product(objects(eng), repeat=2):
        assert compose_nat(eng.sym(b, a), eng.sym(a, b)) == identity_nat(eng.tensor(a, b))


def test_bimodule_and_interchange(eng):
    for a in objects(eng):
        assert prof.bimodule_check(eng.ctx, a)
    assert "interchange" in eng.self_test(objects(eng))


def test_curry_uncurry_round_trip():
    e = CopresheafEngine(ProfContext(builtin("I2")))
    H = setval.hom_bifunctor(builtin("I2"))
    for f in e.hom(e.tensor(H, H), H):
        assert e.uncurry(H, H, e.curry(H, H, f)) == f
