from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from bvengine import setval
from bvengine.finbase import builtin
from bvengine.setval import (
    BudgetExceeded, MediatorNotFound, NotNatural, SetFunctor, SetNat, UnionFind,
    check_natural, compose_nat, coproduct, count_nats, empty_functor, find_iso,
    identity_nat, inverse_nat, nat_from_fn, product, pullback, pushout, quotient,
    terminal_functor, yoneda, yoneda_element, yoneda_map,
)

I1, I2, I3 = builtin("I1"), builtin("I2"), builtin("I3")


def z2(E=I2) -> SetFunctor:
    """Z₂ acting on itself by addition."""
    return yoneda(E, 0)


def trivial_pair(E=I2) -> SetFunctor:
    return setval.constant_functor(E, ["p", "q"])


@given(st.integers(1, 12), st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11)), max_size=20))
def test_quotient_matches_naive_closure(n, pairs):
    pairs = [(x % n, y % n) for x, y in pairs]
    q = quotient(range(n), pairs)
    # naive transitive closure
    cls = {i: {i} for i in range(n)}
    changed = True
    while changed:
        changed = False
        for x, y in pairs:
            if cls[x] is not cls[y]:
                merged = cls[x] | cls[y]
                for z in merged:
                    cls[z] = merged
                changed = True
    assert len(q) == len({frozenset(c) for c in cls.values()})
    for x, y in itertools.product(range(n), repeat=2):
        assert (q.class_of[x] == q.class_of[y]) == (y in cls[x])
    assert all(q.reps[k] == min(q.members(k)) for k in range(len(q)))


def test_union_find_root_is_minimum():
    uf = UnionFind(5)
    uf.union(4, 2)
    uf.union(2, 3)
    assert {uf.find(i) for i in (2, 3, 4)} == {2}


def test_yoneda_functor_laws():
    for E in (I1, I2, I3):
        for e in range(E.n_obj):
            assert setval.validate_functor(yoneda(E, e))


@pytest.mark.parametrize("F", [z2(), trivial_pair(), terminal_functor(I2)])
def test_yoneda_lemma_count(F):
    assert count_nats(yoneda(I2, 0), F) == F.size(0)
    for x in range(F.size(0)):
        assert yoneda_element(yoneda_map(0, F, x), 0) == x


def test_nat_counts_on_i2():
    # Z₂-equivariant self-maps of Z₂ are the two translations
    assert count_nats(z2(), z2()) == 2
    # maps from the regular action into a trivial action are constant
    assert count_nats(z2(), trivial_pair()) == 2
    # no equivariant map from a fixed point into the free orbit
    assert count_nats(terminal_functor(I2), z2()) == 0


def test_non_natural_rejected():
    bad = SetNat(z2(), trivial_pair(), ((0, 1),))
    with pytest.raises(NotNatural):
        check_natural(bad)


def test_inverse_and_iso():
    fwd, bwd = find_iso(z2(), z2())
    assert compose_nat(bwd, fwd) == identity_nat(z2())
    assert find_iso(z2(), trivial_pair()) is None
    const = nat_from_fn(z2(), trivial_pair(), lambda e, i: 0)
    with pytest.raises(ValueError):
        inverse_nat(const)


def test_budget_exceeded():
    big = setval.constant_functor(I1, range(6))
    with pytest.raises(BudgetExceeded):
        count_nats(big, big, budget=10)


def test_pullback_of_coproduct_injections_is_empty():
    F, G = z2(), trivial_pair()
    S, i1, i2 = coproduct(F, G)
    pb = pullback(i1, i2)
    assert pb.obj.sizes == (0,)


def test_pullback_of_distinct_constants():
    # two maps from 2-element carriers into a 2-element trivial action
    A, B, H = trivial_pair(), trivial_pair(), trivial_pair()
    f = nat_from_fn(A, H, lambda e, i: 0)
    g = nat_from_fn(B, H, lambda e, i: 1)
    assert pullback(f, g).obj.sizes == (0,)
    g0 = nat_from_fn(B, H, lambda e, i: 0)
    pb = pullback(f, g0)
    assert pb.obj.sizes == (4,)
    with pytest.raises(MediatorNotFound):
        pullback(f, g).mediate(identity_nat(A), identity_nat(B))


def test_pullback_mediator_unique():
    F = z2()
    idF = identity_nat(F)
    pb = pullback(idF, idF)
    k = pb.mediate(idF, idF, check_unique=True)
    assert compose_nat(pb.p1, k) == idF and compose_nat(pb.p2, k) == idF


def test_product_and_coproduct_universal():
    F, G = z2(), trivial_pair()
    P, p1, p2 = product(F, G)
    assert P.sizes == (4,)
    h1, h2 = identity_nat(F), nat_from_fn(F, G, lambda e, i: 1)
    m = setval.pair(P, h1, h2)
    assert compose_nat(p1, m) == h1 and compose_nat(p2, m) == h2
    S, i1, i2 = coproduct(F, F)
    c = setval.copair(S, idF := identity_nat(F), idF)
    assert compose_nat(c, i1) == idF == compose_nat(c, i2)
    assert S.sizes == (4,)


def test_pushout_glues():
    F = z2()
    E = empty_functor(I2)
    po = pushout(nat_from_fn(E, F, lambda e, i: i), nat_from_fn(E, F, lambda e, i: i))
    assert po.obj.sizes == (4,)
    idF = identity_nat(F)
    po = pushout(idF, idF)
    assert po.obj.sizes == (2,)
    assert compose_nat(po.copair(idF, idF), po.i1) == idF


def test_coend_and_end_of_hom_on_i2():
    H = setval.hom_bifunctor(I2)
    assert len(setval.coend(H, I2)) == 2
    assert len(setval.end(H, I2)) == 2


def test_coend_and_end_on_i1():
    T = terminal_functor(setval.twisted_base(I1))
    assert len(setval.coend(T, I1)) == 1
    assert len(setval.end(T, I1)) == 1
