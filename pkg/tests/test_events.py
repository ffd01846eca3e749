from __future__ import annotations

import itertools

import pytest

from bvengine.chu import IsoNotFound
from bvengine.events import Envelope

from conftest import model


@pytest.fixture(scope="module")
def env2() -> Envelope:
    return model("I2").envelope


@pytest.fixture(scope="module")
def env3() -> Envelope:
    return model("I3").envelope


def test_i1_is_trivial():
    env = Envelope("I1")
    o = env.objects()[0]
    assert env.faithful(o).sizes() == {"first": (1,), "second": (1,)}
    env.lemma_par(o, o)


def test_i2_event_sizes(env2):
    o = env2.objects()[0]
    assert env2.faithful(o).sizes() == {"first": (2,), "second": (2,)}
    assert env2.event(o).sizes() == {"first": (2,), "second": (2,)}
    assert env2.first_order(0).sizes() == {"first": (2,), "second": (2,)}


def test_faithful_context_is_representable(env2, env3):
    for env in (env2, env3):
        for a in env.objects():
            F = env.faithful(a)
            assert F.a2 == env.representable(a)
            assert F.a == env.intervention(a)


def test_local_combs_on_i2(env2):
    o = env2.objects()[0]
    lc = env2.local_combs(o, o)
    assert lc.obj.sizes == (2,)
    T = env2.chu.tensor(env2.faithful(o), env2.faithful(o))
    assert lc.obj == T.a2


def test_lemma_par_i3_certificate(env3):
    iso = env3.lemma_par((0, 0), (1, 1))
    chu = env3.chu
    assert chu.compose(iso.backward, iso.forward) == chu.identity(iso.forward.src)
    assert iso.forward.dst == env3.faithful((1, 1))


def test_lemma_par_all_pairs(env2, env3):
    for env in (env2, env3):
        for a, b in itertools.product(env.objects(), repeat=2):
            env.lemma_par(a, b)


def test_first_order_collapse_and_morphisms(env2, env3):
    for env in (env2, env3):
        n = env.C.n_obj
        for a, b in itertools.product(range(n), repeat=2):
            certs = env.first_order_collapse(a, b)
            assert set(certs) == {"tensor-seq", "seq-par", "tensor-par"}
            rep = env.check_first_order_supermaps(a, b)
            assert rep.ok and rep.morphisms == len(env.C.hom(a, b))


def test_optic_supermaps(env2, env3):
    o = env2.objects()[0]
    rep = env2.check_optic_supermaps(o, o)
    assert (rep.ok, rep.morphisms, rep.expected) == (True, 2, 2)
    for a, b in itertools.product(env3.objects(), repeat=2):
        rep = env3.check_optic_supermaps(a, b)
        want = int((b[0] - a[0]) % 2 == (b[1] - a[1]) % 2)
        assert rep.ok and rep.morphisms == want


def test_comb_and_two_hole_supermaps(env2):
    o = env2.objects()[0]
    rep = env2.check_comb_supermaps(o, o, o)
    assert (rep.ok, rep.morphisms) == (True, 2)
    rep = env2.check_seq_supermaps(o, o, o)
    assert (rep.ok, rep.morphisms) == (True, 2)
    assert len(env2.two_hole_map(o, o, o)) == 2


def test_par_bounds(env2, env3):
    o = env2.objects()[0]
    assert env2.par_bounds(o, o) == {"join": (2,), "par": (2,), "combined": (2,)}
    out = env3.par_bounds((0, 0), (1, 1))
    assert out["combined"] == (1, 0, 0, 1)


def test_join_restricts_to_canonical_maps(env2):
    o = env2.objects()[0]
    A = env2.event(o)
    res = env2.join_orders(A, A)
    chu = env2.chu
    assert chu.compose(res.to_par, res.left) == chu.tau_par(A, A)


def test_iso_not_found_reports_cardinalities(env3):
    chu = env3.chu
    with pytest.raises(IsoNotFound) as info:
        chu.require_iso(env3.faithful((0, 0)), env3.faithful((0, 1)))
    assert "lhs" in info.value.cardinalities
