"""Monoidal engines: the structure the Chu layer is generic over.

An engine is a ⊗-closed, ⊗-symmetric duoidal category with a chosen
⊲-monoid ``⊥``.  Both engines shipped here are copresheaf categories over a
pair context, so objects are :class:`~bvengine.setval.SetFunctor` values
and morphisms are :class:`~bvengine.setval.SetNat` values:

* :class:`CopresheafEngine` over :class:`~bvengine.tambara.OpticContext` is
  the category of strong profunctors with ``⊥ = 1_C``;
* :class:`SetEngine` is the same machinery over the terminal category,
  where ⊗ and ⊲ both compute cartesian products and ``⊥`` is a finite
  monoid supplied by the instance.
"""
from __future__ import annotations

from typing import Hashable, Iterator, Sequence

from . import prof
from .finbase import DEFAULT_BUDGET, FinCategory, builtin
from .prof import PairContext, ProfContext
from .setval import (
    Pullback, Pushout, SetFunctor, SetNat, compose_nat, constant_functor,
    coproduct, copair, find_iso, identity_nat, iter_nats, nat_from_fn,
    nat_from_generators, pair, product, pullback, pushout,
)


class EngineError(Exception):
    pass


class CopresheafEngine:
    """Day convolution, Day hom and the sequencing tensor over ``ctx.E``.

    All constructed objects are memoised so that equal requests return
    identical values; every structure map is built by a fixed rule on
    representatives.  ``check`` turns on the representative-independence
    checks of the interchange map.
    """

    kind = "copresheaf"

    def __init__(self, ctx: PairContext, bottom: SetFunctor | None = None,
                 m: SetNat | None = None, u: SetNat | None = None,
                 budget: int = DEFAULT_BUDGET, name: str = "", check: bool = True):
        self.ctx = ctx
        self.E = ctx.E
        self.budget = budget
        self.name = name or ctx.E.name
        self.check = check
        self._cache: dict[tuple, object] = {}
        self._bottom = bottom
        self._m = m
        self._u = u

    # ------------------------------------------------------------------
    # objects

    @property
    def unit(self) -> SetFunctor:
        return self.ctx.tensor_unit

    @property
    def seq_unit(self) -> SetFunctor:
        return self.ctx.seq_unit

    @property
    def bottom(self) -> SetFunctor:
        return self._bottom if self._bottom is not None else self.ctx.seq_unit

    @property
    def normal(self) -> bool:
        return self.unit == self.seq_unit

    def _memo(self, key: tuple, build):
        try:
            return self._cache[key]
        except KeyError:
            val = self._cache[key] = build()
            return val

    def tensor(self, a: SetFunctor, b: SetFunctor) -> SetFunctor:
        return self._memo(("⊗", a, b), lambda: prof.day_tensor(self.E, a, b))

    def seq(self, a: SetFunctor, b: SetFunctor) -> SetFunctor:
        return self._memo(("⊲", a, b), lambda: prof.seq_tensor(self.ctx, a, b, check=self.check))

    def ihom(self, a: SetFunctor, b: SetFunctor) -> SetFunctor:
        return self._memo(("[]", a, b), lambda: prof.day_hom(a, b, self.budget))

    def product(self, a: SetFunctor, b: SetFunctor) -> tuple[SetFunctor, SetNat, SetNat]:
        return self._memo(("×", a, b), lambda: product(a, b))

    def coproduct(self, a: SetFunctor, b: SetFunctor) -> tuple[SetFunctor, SetNat, SetNat]:
        return self._memo(("+", a, b), lambda: coproduct(a, b))

    # ------------------------------------------------------------------
    # morphisms

    @staticmethod
    def identity(a: SetFunctor) -> SetNat:
        return identity_nat(a)

    @staticmethod
    def compose(*maps: SetNat) -> SetNat:
        """``compose(h, g, f) = h∘g∘f``."""
        out = maps[-1]
        for g in reversed(maps[:-1]):
            out = compose_nat(g, out)
        return out

    def tensor_mor(self, f: SetNat, g: SetNat) -> SetNat:
        src, dst = self.tensor(f.src, g.src), self.tensor(f.dst, g.dst)
        return prof.day_tensor_mor(f, g, src, dst)

    def seq_mor(self, f: SetNat, g: SetNat) -> SetNat:
        src, dst = self.seq(f.src, g.src), self.seq(f.dst, g.dst)
        return prof.seq_tensor_mor(f, g, src, dst)

    def assoc(self, a, b, c) -> SetNat:
        return self._memo(("α", a, b, c), lambda: prof.day_assoc(
            self.E, self.tensor(self.tensor(a, b), c), self.tensor(a, b),
            self.tensor(a, self.tensor(b, c)), self.tensor(b, c)))

    def assoc_inv(self, a, b, c) -> SetNat:
        return self._memo(("α'", a, b, c), lambda: prof.day_assoc_inv(
            self.E, self.tensor(a, self.tensor(b, c)), self.tensor(b, c),
            self.tensor(self.tensor(a, b), c), self.tensor(a, b)))

    def lunit(self, a) -> SetNat:
        return prof.day_lunit(self.E, self.tensor(self.unit, a), self.unit, a)

    def lunit_inv(self, a) -> SetNat:
        return prof.day_lunit_inv(self.E, a, self.unit, self.tensor(self.unit, a))

    def runit(self, a) -> SetNat:
        return prof.day_runit(self.E, self.tensor(a, self.unit), self.unit, a)

    def runit_inv(self, a) -> SetNat:
        return prof.day_runit_inv(self.E, a, self.unit, self.tensor(a, self.unit))

    def sym(self, a, b) -> SetNat:
        return self._memo(("σ", a, b), lambda: prof.day_sym(
            self.E, self.tensor(a, b), self.tensor(b, a)))

    def ev(self, a, b) -> SetNat:
        """``a ⊗ [a,b] → b``."""
        h = self.ihom(a, b)
        return self._memo(("ev", a, b), lambda: prof.day_ev(
            self.E, self.tensor(a, h), h, b))

    def curry(self, a: SetFunctor, x: SetFunctor, f: SetNat) -> SetNat:
        """Transpose ``f: a⊗x → b`` to ``x → [a,b]``."""
        return prof.day_curry(self.E, a, x, self.tensor(a, x), f, self.ihom(a, f.dst))

    def curry_pullback(self, a: SetFunctor, x1: SetFunctor, f1: SetNat,
                       x2: SetFunctor, f2: SetNat) -> Pullback:
        """Pullback of ``curry(f1): x1 → [a,q]`` and ``curry(f2): x2 → [a,q]``
        for ``f_i: a⊗x_i → q``.

        Both transposes are corestricted to the subfunctor of ``[a,q]`` they
        jointly span.  The inclusion is monic, so the pullback is the same,
        and all of ``[a,q]`` never has to be enumerated.
        """
        q = f1.dst
        if f2.dst != q or f1.src != self.tensor(a, x1) or f2.src != self.tensor(a, x2):
            raise EngineError("maps must be a⊗x1 → q and a⊗x2 → q")
        t1 = prof.day_curry_tables(self.E, a, x1, f1.src, f1)
        t2 = prof.day_curry_tables(self.E, a, x2, f2.src, f2)
        K = prof.day_hom_image(self.E, q, [t1, t2])
        g1 = SetNat(x1, K, tuple(tuple(K.index(e, t) for t in row) for e, row in enumerate(t1)))
        g2 = SetNat(x2, K, tuple(tuple(K.index(e, t) for t in row) for e, row in enumerate(t2)))
        return pullback(g1, g2)

    def uncurry(self, a: SetFunctor, b: SetFunctor, g: SetNat) -> SetNat:
        """``g: x → [a,b]`` back to ``a⊗x → b``."""
        return self.compose(self.ev(a, b), self.tensor_mor(self.identity(a), g))

    def precompose(self, f: SetNat, b: SetFunctor) -> SetNat:
        """``[f, b]: [a2, b] → [a, b]`` for ``f: a → a2``."""
        a, a2 = f.src, f.dst
        h = self.ihom(a2, b)
        body = self.compose(self.ev(a2, b), self.tensor_mor(f, self.identity(h)))
        return self.curry(a, h, body)

    def postcompose(self, a: SetFunctor, g: SetNat) -> SetNat:
        """``[a, g]: [a, b] → [a, b2]``."""
        h = self.ihom(a, g.src)
        return self.curry(a, h, self.compose(g, self.ev(a, g.src)))

    # sequencing structure ----------------------------------------------

    def seq_assoc(self, a, b, c) -> SetNat:
        return prof.seq_assoc(self.ctx, self.seq(self.seq(a, b), c), self.seq(a, b),
                              self.seq(a, self.seq(b, c)), self.seq(b, c))

    def seq_assoc_inv(self, a, b, c) -> SetNat:
        return prof.seq_assoc_inv(self.ctx, self.seq(a, self.seq(b, c)), self.seq(b, c),
                                  self.seq(self.seq(a, b), c), self.seq(a, b))

    def seq_lunit(self, a) -> SetNat:
        return prof.seq_lunit(self.ctx, self.seq(self.seq_unit, a), a)

    def seq_runit(self, a) -> SetNat:
        return prof.seq_runit(self.ctx, self.seq(a, self.seq_unit), a)

    def seq_lunit_inv(self, a) -> SetNat:
        return prof.seq_lunit_inv(self.ctx, a, self.seq(self.seq_unit, a))

    def seq_runit_inv(self, a) -> SetNat:
        return prof.seq_runit_inv(self.ctx, a, self.seq(a, self.seq_unit))

    def delta(self, a, b, c, d) -> SetNat:
        """``(a⊲b)⊗(c⊲d) → (a⊗c)⊲(b⊗d)``."""
        def build():
            ab, cd = self.seq(a, b), self.seq(c, d)
            ac, bd = self.tensor(a, c), self.tensor(b, d)
            return prof.duoidal_delta(self.ctx, self.tensor(ab, cd), ab, cd,
                                      self.seq(ac, bd), ac, bd, check=self.check)
        return self._memo(("δ", a, b, c, d), build)

    def gamma(self) -> SetNat:
        """``i_⊗ → i_⊗ ⊲ i_⊗``."""
        return self.ctx.gamma(self.seq(self.unit, self.unit))

    def mu(self) -> SetNat:
        """``i_⊲ ⊗ i_⊲ → i_⊲``."""
        return self.ctx.mu(self.tensor(self.seq_unit, self.seq_unit))

    def nu(self) -> SetNat:
        """``i_⊗ → i_⊲``."""
        return self.ctx.nu()

    @property
    def m(self) -> SetNat:
        """Multiplication ``⊥⊲⊥ → ⊥`` of the ⊲-monoid."""
        if self._m is None:
            self._m = self.seq_lunit(self.bottom)
        return self._m

    @property
    def u(self) -> SetNat:
        """Unit ``i_⊲ → ⊥`` of the ⊲-monoid."""
        if self._u is None:
            self._u = identity_nat(self.bottom)
        return self._u

    # limits --------------------------------------------------------------

    @staticmethod
    def pullback(f: SetNat, g: SetNat) -> Pullback:
        return pullback(f, g)

    @staticmethod
    def pushout(f: SetNat, g: SetNat) -> Pushout:
        return pushout(f, g)

    @staticmethod
    def pair(P: SetFunctor, f: SetNat, g: SetNat) -> SetNat:
        return pair(P, f, g)

    @staticmethod
    def copair(S: SetFunctor, f: SetNat, g: SetNat) -> SetNat:
        return copair(S, f, g)

    # enumeration -----------------------------------------------------------

    def iter_hom(self, a: SetFunctor, b: SetFunctor) -> Iterator[SetNat]:
        for comps in iter_nats(a, b, self.budget):
            yield SetNat(a, b, comps)

    def hom(self, a: SetFunctor, b: SetFunctor) -> list[SetNat]:
        return list(self.iter_hom(a, b))

    def find_iso(self, a: SetFunctor, b: SetFunctor):
        return find_iso(a, b, self.budget)

    # self test -------------------------------------------------------------

    def self_test(self, objects: Sequence[SetFunctor] = ()) -> list[str]:
        """Check the ⊲-monoid laws of ``⊥`` and the unit maps, and build the
        interchange map on every quadruple of the given objects (which checks
        it on every representative).  Returns the names of passed checks;
        raises on the first failure."""
        done = []
        B, m, u = self.bottom, self.m, self.u
        lhs = self.compose(m, self.seq_mor(m, self.identity(B)))
        rhs = self.compose(m, self.seq_mor(self.identity(B), m), self.seq_assoc(B, B, B))
        if lhs != rhs:
            raise EngineError("⊥ multiplication is not associative")
        done.append("monoid-assoc")
        left = self.compose(m, self.seq_mor(u, self.identity(B)))
        if left != self.seq_lunit(B):
            raise EngineError("⊥ unit fails the left unit law")
        right = self.compose(m, self.seq_mor(self.identity(B), u))
        if right != self.seq_runit(B):
            raise EngineError("⊥ unit fails the right unit law")
        done.append("monoid-unit")
        self.gamma(), self.mu(), self.nu()
        done.append("unit-maps")
        objs = list(objects) or [self.unit]
        for a in objs:
            for b in objs:
                self.delta(a, b, a, b)
        done.append("interchange")
        return done


class SetEngine(CopresheafEngine):
    """Finite sets: ⊗ and ⊲ are cartesian products, ``[a,b]`` is the
    function set and ``⊥`` is a finite monoid given by its table."""

    kind = "set"

    def __init__(self, elements: Sequence[str] = ("0", "1"),
                 mult: Sequence[Sequence[str]] = (("0", "0"), ("0", "1")),
                 unit: str = "1", budget: int = DEFAULT_BUDGET, check: bool = True):
        ctx = ProfContext(builtin("I1"))
        super().__init__(ctx, budget=budget, name="Set", check=check)
        elements = tuple(elements)
        self.bottom_labels = elements
        self._bottom = self.obj(elements)
        idx = {x: i for i, x in enumerate(elements)}
        table = [[idx[v] for v in row] for row in mult]
        B = self._bottom
        BB = self.seq(B, B)
        self._m = nat_from_fn(BB, B, lambda e, k: table[BB.carrier[e][k][1]][BB.carrier[e][k][2]])
        self._u = nat_from_fn(self.seq_unit, B, lambda e, k: idx[unit])

    def obj(self, labels: Sequence[Hashable]) -> SetFunctor:
        return constant_functor(self.E, tuple(labels))

    def function(self, a: SetFunctor, b: SetFunctor, fn) -> SetNat:
        """A map given on labels."""
        return nat_from_fn(a, b, lambda e, i: b.index(0, fn(a.carrier[0][i])))

    def pairing(self, a: SetFunctor, a2: SetFunctor, fn) -> SetNat:
        """``a ⊗ a2 → ⊥`` from a function of two labels returning a ⊥ label."""
        T = self.tensor(a, a2)
        B = self.bottom

        def gen(e: int, g: tuple) -> int:
            _, _, _, p, q = g
            return B.index(0, fn(a.carrier[0][p], a2.carrier[0][q]))

        return nat_from_generators(T, B, gen)

    def elements(self, a: SetFunctor) -> tuple:
        return a.carrier[0]


def stprof_engine(C: FinCategory | str, budget: int = DEFAULT_BUDGET,
                  check: bool = True) -> CopresheafEngine:
    from .tambara import OpticContext
    if isinstance(C, str):
        C = builtin(C)
    return CopresheafEngine(OpticContext(C), budget=budget, name=f"StProf({C.name})",
                            check=check)


def engine_for(spec, budget: int | None = None) -> CopresheafEngine:
    """The engine described by an :class:`~bvengine.finbase.InstanceSpec`."""
    budget = budget or spec.max_nat_candidates
    eng = spec.engine or {"kind": "stprof"}
    if eng.get("kind", "stprof") == "set":
        bot = eng.get("bottom") or {}
        return SetEngine(bot.get("elements", ("0", "1")),
                         bot.get("mult", (("0", "0"), ("0", "1"))),
                         bot.get("unit", "1"), budget=budget)
    return stprof_engine(spec.category, budget=budget)
