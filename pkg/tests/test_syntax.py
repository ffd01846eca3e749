from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from bvengine.syntax import (
    Atom, FormulaSyntaxError, Neg, Par, Seq, Tensor, UnboundAtom, Unit, atoms,
    formula_corpus, interpret, iter_subformulas, parse, pretty, random_formula, size,
)

from conftest import model


def test_examples():
    a, b, c = Atom("a"), Atom("b"), Atom("c")
    assert parse("~(a * b)") == Neg(Tensor(a, b))
    assert parse("a ; b ; c") == Seq(Seq(a, b), c)
    assert parse("a || b ; c * 1") == Par(a, Seq(b, Tensor(c, Unit())))
    assert parse("~~a") == Neg(Neg(a))
    assert parse("a1 * _x") == Tensor(Atom("a1"), Atom("_x"))


def test_error_at_end_of_input():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("a *")
    assert info.value.position == 3
    assert "identifier" in info.value.expected
    assert "end of input" in str(info.value)


@pytest.mark.parametrize("text,pos", [("(a", 2), ("a b", 2), ("a $ b", 2), ("", 0), ("a ||", 4)])
def test_error_positions(text, pos):
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert info.value.position == pos


def test_pretty_uses_minimal_parentheses():
    assert pretty(parse("(a * b) ; c")) == "a * b ; c"
    assert pretty(parse("a ; (b ; c)")) == "a ; (b ; c)"
    assert pretty(parse("~(a || b)")) == "~(a || b)"


def test_corpus_is_deterministic():
    assert formula_corpus(50, seed=3) == formula_corpus(50, seed=3)
    assert all(size(f) <= 3 for f in formula_corpus(200))


formulas = st.builds(lambda seed, k: random_formula(random.Random(seed), ["a", "b", "c"], k),
                     st.integers(0, 10 ** 6), st.integers(0, 6))


@given(formulas)
def test_round_trip(f):
    assert parse(pretty(f)) == f


@given(formulas)
def test_subformula_accounting(f):
    subs = list(iter_subformulas(f))
    assert subs[0] == f
    assert sum(isinstance(s, (Tensor, Seq, Par)) for s in subs) == size(f)
    assert atoms(f) == {s.name for s in subs if isinstance(s, Atom)}


@settings(max_examples=30, deadline=None)
@given(formulas, formulas)
def test_strict_negation_laws_on_i2(f, g):
    interp = model("I2").interpreter()
    assert interp(Neg(Neg(f))) == interp(f)
    assert interp(Neg(Tensor(f, g))) == interp(Par(Neg(f), Neg(g)))
    assert interp(Neg(Seq(f, g))) == interp(Seq(Neg(f), Neg(g)))


def test_unbound_atom():
    m = model("I2")
    with pytest.raises(UnboundAtom):
        interpret(parse("a * zz"), m.chu, m.bindings)
