from __future__ import annotations

import itertools

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from bvengine.chu import Chu, ChuObject, NotChuMorphism, TypeMismatch
from bvengine.engines import SetEngine

S = SetEngine()
chu = Chu(S)
BIT = S.obj(["0", "1"])


def AND(x: str, y: str) -> str:
    return "1" if x == y == "1" else "0"


def space(first, second, fn) -> ChuObject:
    a, a2 = S.obj(first), S.obj(second)
    return chu.obj(a, a2, S.pairing(a, a2, fn))


A_AND = space(["0", "1"], ["0", "1"], AND)
B_RIGHT = space(["0"], ["0", "1"], lambda x, y: y)


@st.composite
def chu_spaces(draw):
    n = draw(st.integers(1, 2))
    k = draw(st.integers(1, 2))
    table = draw(st.lists(st.sampled_from("01"), min_size=n * k, max_size=n * k))
    first = [f"x{i}" for i in range(n)]
    second = [f"y{j}" for j in range(k)]
    return space(first, second, lambda x, y: table[int(x[1:]) * k + int(y[1:])])


# -- morphisms ----------------------------------------------------------------


def test_identity_is_morphism():
    ok, wit = chu.is_morphism(A_AND, A_AND, S.identity(BIT), S.identity(BIT))
    assert ok and wit is None


def test_negation_is_not_a_morphism():
    neg = S.function(BIT, BIT, lambda x: "1" if x == "0" else "0")
    ok, wit = chu.is_morphism(A_AND, A_AND, neg, S.identity(BIT))
    assert not ok
    _, (_, _, _, p, q), lhs, rhs = wit
    assert lhs != rhs
    with pytest.raises(NotChuMorphism):
        chu.morphism(A_AND, A_AND, neg, S.identity(BIT))


def test_type_mismatch():
    with pytest.raises(TypeMismatch):
        chu.is_morphism(A_AND, B_RIGHT, S.identity(BIT), S.identity(BIT))
    with pytest.raises(TypeMismatch):
        chu.obj(BIT, BIT, S.pairing(BIT, S.obj(["0"]), lambda x, y: "0"))


# -- hand oracles on the finite-set engine ---------------------------------------


def test_tensor_second_component_oracle():
    # pairs (φ, ψ) of self-maps of {0,1} with AND(x, φ(y)) = AND(y, ψ(x))
    fns = list(itertools.product("01", repeat=2))
    want = sum(1 for phi, psi in itertools.product(fns, repeat=2)
               if all(AND(x, phi[int(y)]) == AND(y, psi[int(x)]) for x in "01" for y in "01"))
    assert want == 2
    T = chu.tensor(A_AND, A_AND)
    assert T.a.sizes == (4,)
    assert T.a2.sizes == (want,)


def test_embed_second_component_is_function_space():
    E = chu.embed(BIT)
    assert E.a.sizes == (2,)
    assert E.a2.sizes == (4,)


def test_sequence_and_tensor_carriers_differ():
    T, Q = chu.tensor(A_AND, A_AND), chu.seq(A_AND, A_AND)
    assert T.a.sizes == Q.a.sizes == (4,)
    assert (T.a2.sizes, Q.a2.sizes) == ((2,), (4,))


def test_units_on_finite_sets():
    # the ⊗ unit pairs into ⊥ = {0,1} while the ⊲ unit is a singleton pair
    assert not chu.normal
    assert chu.seq_unit().sizes() == {"first": (1,), "second": (1,)}
    assert chu.unit().sizes() == {"first": (1,), "second": (2,)}
    assert chu.par_unit().sizes() == {"first": (2,), "second": (1,)}
    assert chu.find_iso(chu.unit(), chu.par_unit()) is None


def test_undualised_star_autonomy_count_fails():
    """The undualised count ``|Chu(A⊗B, C)| = |Chu(A, (B⊗C)*)|`` fails while
    the dualised and internal-hom forms hold."""
    A, C = A_AND, B_RIGHT
    literal = (len(chu.hom_set(chu.tensor(A, A), C)),
               len(chu.hom_set(A, chu.dual(chu.tensor(A, C)))))
    assert literal == (0, 2)
    assert chu.star_autonomy(A, A, C) == (2, 2)
    assert len(chu.hom_set(A, chu.hom(A, C))) == 0


# -- structure maps --------------------------------------------------------------


def test_distributors_on_and_space():
    d = chu.delta(A_AND, A_AND, A_AND, A_AND, check_unique=True)
    assert chu.is_morphism(d.src, d.dst, d.f, d.f2)[0]
    e = chu.epsilon(A_AND, A_AND, A_AND, A_AND)
    assert chu.is_morphism(e.src, e.dst, e.f, e.f2)[0]


@pytest.mark.parametrize("name", ["I1", "I2", "I3"])
def test_distributors_on_units_are_invertible(name):
    from conftest import model
    C = model(name).chu
    I = C.unit()
    for m in (C.delta(I, I, I, I, check_unique=True), C.epsilon(I, I, I, I)):
        assert m.f.is_bijective() and m.f2.is_bijective()


def test_switch_on_and_space():
    s = chu.switch(A_AND, A_AND, A_AND)
    assert chu.is_morphism(s.src, s.dst, s.f, s.f2)[0]


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_additives(data):
    A = data.draw(chu_spaces())
    B = data.draw(chu_spaces())
    X = data.draw(chu_spaces())
    P, p1, p2 = chu.product(A, B)
    assert chu.dual(P) == chu.coproduct(chu.dual(A), chu.dual(B))[0]
    for h, k in itertools.product(chu.hom_set(X, A), chu.hom_set(X, B)):
        m = chu.pair(P, h, k)
        assert chu.compose(p1, m) == h and chu.compose(p2, m) == k
    assert len(chu.hom_set(X, P)) == len(chu.hom_set(X, A)) * len(chu.hom_set(X, B))


# -- properties ----------------------------------------------------------------------

small = settings(max_examples=25, deadline=None,
                     suppress_health_check=[HealthCheck.too_slow])


@small
@given(chu_spaces(), chu_spaces())
def test_duality_laws(A, B):
    assert chu.dual(chu.dual(A)) == A
    assert chu.dual(chu.tensor(A, B)) == chu.par(chu.dual(A), chu.dual(B))
    assert chu.dual(chu.seq(A, B)) == chu.seq(chu.dual(A), chu.dual(B))


@small
@given(chu_spaces(), chu_spaces())
def test_homs_dualise(A, B):
    hs = chu.hom_set(A, B)
    assert {chu.dual_mor(h) for h in hs} == set(chu.hom_set(chu.dual(B), chu.dual(A)))
    for h in hs:
        assert chu.compose(h, chu.identity(A)) == h == chu.compose(chu.identity(B), h)


@small
@given(chu_spaces(), chu_spaces(), chu_spaces())
def test_star_autonomy_bijection(A, B, C):
    lhs, rhs = chu.star_autonomy(A, B, C)
    assert lhs == rhs
    assert len(chu.hom_set(chu.tensor(A, B), C)) == len(chu.hom_set(A, chu.hom(B, C)))


@small
@given(chu_spaces(), chu_spaces())
def test_symmetry_involutive(A, B):
    s = chu.compose(chu.sym(B, A), chu.sym(A, B))
    assert s == chu.identity(chu.tensor(A, B))


@small
@given(chu_spaces())
def test_unitors_round_trip(A):
    for there, back in ((chu.tensor_runit(A), chu.tensor_runit_inv(A)),
                        (chu.tensor_lunit(A), chu.tensor_lunit_inv(A)),
                        (chu.seq_runit(A), chu.seq_runit_inv(A)),
                        (chu.seq_lunit(A), chu.seq_lunit_inv(A))):
        assert chu.compose(back, there) == chu.identity(there.src)
