"""The Chu construction over a monoidal engine.

Objects are triples ``(a, a', r: a⊗a' → ⊥)`` and morphisms are pairs
``(f: a → b, f': b' → a')`` making the Chu square commute.  Everything is
assembled from engine combinators, so the same code runs over finite sets
and over strong profunctors.  ⅋ and the internal hom are defined from ⊗ and
the dual; no extra choices are made.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .engines import CopresheafEngine
from .setval import MediatorNotFound, Pullback, SetFunctor, SetNat


class TypeMismatch(Exception):
    pass


class NotChuMorphism(Exception):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class IsoNotFound(Exception):
    def __init__(self, message: str, cardinalities=None):
        super().__init__(message)
        self.cardinalities = cardinalities


@dataclass(frozen=True, eq=False)
class ChuObject:
    a: SetFunctor
    a2: SetFunctor
    r: SetNat

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, ChuObject):
            return NotImplemented
        return self.a == other.a and self.a2 == other.a2 and self.r == other.r

    def __hash__(self) -> int:
        return hash((self.a, self.a2, self.r.components))

    def __repr__(self) -> str:
        return f"ChuObject({self.a.sizes}, {self.a2.sizes})"

    def sizes(self) -> dict[str, tuple[int, ...]]:
        return {"first": self.a.sizes, "second": self.a2.sizes}


@dataclass(frozen=True, eq=False)
class ChuMorphism:
    src: ChuObject
    dst: ChuObject
    f: SetNat
    f2: SetNat

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChuMorphism):
            return NotImplemented
        return (self.f == other.f and self.f2 == other.f2
                and self.src == other.src and self.dst == other.dst)

    def __hash__(self) -> int:
        return hash((self.f.components, self.f2.components))

    def __repr__(self) -> str:
        return f"ChuMorphism({self.f.components}, {self.f2.components})"


@dataclass(frozen=True)
class ChuIso:
    forward: ChuMorphism
    backward: ChuMorphism


class Chu:
    """``Chu(engine, ⊥)`` with all connectives of a pre-BV category."""

    def __init__(self, engine: CopresheafEngine):
        self.e = engine
        self._tensor: dict[tuple[ChuObject, ChuObject], tuple[ChuObject, Pullback]] = {}

    # ------------------------------------------------------------------
    # basics

    @property
    def bottom(self) -> SetFunctor:
        return self.e.bottom

    def obj(self, a: SetFunctor, a2: SetFunctor, r: SetNat) -> ChuObject:
        if r.src != self.e.tensor(a, a2) or r.dst != self.bottom:
            raise TypeMismatch("pairing must be a map a⊗a' → ⊥")
        return ChuObject(a, a2, r)

    def square(self, A: ChuObject, B: ChuObject, f: SetNat, f2: SetNat) -> tuple[SetNat, SetNat]:
        """The two sides ``s∘(f⊗1)`` and ``r∘(1⊗f')`` of the Chu square."""
        e = self.e
        if f.src != A.a or f.dst != B.a or f2.src != B.a2 or f2.dst != A.a2:
            raise TypeMismatch("components do not match the Chu objects")
        lhs = e.compose(B.r, e.tensor_mor(f, e.identity(B.a2)))
        rhs = e.compose(A.r, e.tensor_mor(e.identity(A.a), f2))
        return lhs, rhs

    def is_morphism(self, A: ChuObject, B: ChuObject, f: SetNat, f2: SetNat) -> tuple[bool, object]:
        """Evaluate the Chu square; on failure return a witness
        ``(object, element of a⊗b', lhs value, rhs value)``."""
        lhs, rhs = self.square(A, B, f, f2)
        if lhs.components == rhs.components:
            return True, None
        T = lhs.src
        for e_, (l, r) in enumerate(zip(lhs.components, rhs.components)):
            for k, (x, y) in enumerate(zip(l, r)):
                if x != y:
                    return False, (T.base.objects[e_], T.carrier[e_][k],
                                   self.bottom.carrier[e_][x], self.bottom.carrier[e_][y])
        return False, None  # pragma: no cover

    def morphism(self, A: ChuObject, B: ChuObject, f: SetNat, f2: SetNat) -> ChuMorphism:
        ok, wit = self.is_morphism(A, B, f, f2)
        if not ok:
            raise NotChuMorphism("Chu square does not commute", wit)
        return ChuMorphism(A, B, f, f2)

    def identity(self, A: ChuObject) -> ChuMorphism:
        return ChuMorphism(A, A, self.e.identity(A.a), self.e.identity(A.a2))

    def compose(self, g: ChuMorphism, h: ChuMorphism) -> ChuMorphism:
        """``g∘h``."""
        if h.dst != g.src:
            raise TypeMismatch("Chu morphisms are not composable")
        return ChuMorphism(h.src, g.dst, self.e.compose(g.f, h.f), self.e.compose(h.f2, g.f2))

    # ------------------------------------------------------------------
    # units and duality

    def unit(self) -> ChuObject:
        """``(i, ⊥, λ)``."""
        e = self.e
        return ChuObject(e.unit, self.bottom, e.lunit(self.bottom))

    def par_unit(self) -> ChuObject:
        return self.dual(self.unit())

    def seq_unit(self) -> ChuObject:
        """``(i_⊲, i_⊲, u∘μ)``."""
        e = self.e
        return ChuObject(e.seq_unit, e.seq_unit, e.compose(e.u, e.mu()))

    def dual(self, A: ChuObject) -> ChuObject:
        """``(a', a, r∘σ)``."""
        return ChuObject(A.a2, A.a, self.e.compose(A.r, self.e.sym(A.a2, A.a)))

    def dual_mor(self, h: ChuMorphism) -> ChuMorphism:
        return ChuMorphism(self.dual(h.dst), self.dual(h.src), h.f2, h.f)

    # ------------------------------------------------------------------
    # tensor, par, hom

    def tensor_data(self, A: ChuObject, B: ChuObject) -> tuple[ChuObject, Pullback]:
        """``A⊗B = (a⊗b, [a,b'] ×_{[a⊗b,⊥]} [b,a'], u)`` and its pullback."""
        key = (A, B)
        if key in self._tensor:
            return self._tensor[key]
        e, bot = self.e, self.bottom
        a, a2, b, b2 = A.a, A.a2, B.a, B.a2
        ab = e.tensor(a, b)
        h_ab2, h_ba2 = e.ihom(a, b2), e.ihom(b, a2)
        # [b,a'] → [a⊗b,⊥]:  (a⊗b)⊗[b,a'] → a⊗(b⊗[b,a']) → a⊗a' → ⊥
        k1 = e.compose(A.r, e.tensor_mor(e.identity(a), e.ev(b, a2)), e.assoc(a, b, h_ba2))
        # [a,b'] → [a⊗b,⊥]:  (a⊗b)⊗[a,b'] → (b⊗a)⊗[a,b'] → b⊗(a⊗[a,b']) → b⊗b' → ⊥
        k2 = e.compose(B.r, e.tensor_mor(e.identity(b), e.ev(a, b2)), e.assoc(b, a, h_ab2),
                       e.tensor_mor(e.sym(a, b), e.identity(h_ab2)))
        pb = e.curry_pullback(ab, h_ab2, k2, h_ba2, k1)
        # ev∘(1⊗diag) is the uncurried first leg
        u = e.compose(k2, e.tensor_mor(e.identity(ab), pb.p1))
        out = (ChuObject(ab, pb.obj, u), pb)
        self._tensor[key] = out
        return out

    def tensor(self, A: ChuObject, B: ChuObject) -> ChuObject:
        return self.tensor_data(A, B)[0]

    def par(self, A: ChuObject, B: ChuObject) -> ChuObject:
        """``(A*⊗B*)*``."""
        return self.dual(self.tensor(self.dual(A), self.dual(B)))

    def hom(self, A: ChuObject, B: ChuObject) -> ChuObject:
        """``A*⅋B = (A⊗B*)*``."""
        return self.par(self.dual(A), B)

    def tensor_mor(self, h: ChuMorphism, k: ChuMorphism) -> ChuMorphism:
        e = self.e
        A1, A2, B1, B2 = h.src, h.dst, k.src, k.dst
        T1, pb1 = self.tensor_data(A1, B1)
        T2, pb2 = self.tensor_data(A2, B2)
        first = e.tensor_mor(h.f, k.f)
        # [a2,b2'] → [a1,b1']
        h_ab = e.ihom(A2.a, B2.a2)
        m1 = e.curry(A1.a, h_ab, e.compose(k.f2, e.ev(A2.a, B2.a2),
                                           e.tensor_mor(h.f, e.identity(h_ab))))
        h_ba = e.ihom(B2.a, A2.a2)
        m2 = e.curry(B1.a, h_ba, e.compose(h.f2, e.ev(B2.a, A2.a2),
                                           e.tensor_mor(k.f, e.identity(h_ba))))
        second = pb1.mediate(e.compose(m1, pb2.p1), e.compose(m2, pb2.p2))
        return self.morphism(T1, T2, first, second)

    def sym(self, A: ChuObject, B: ChuObject) -> ChuMorphism:
        """``A⊗B → B⊗A``."""
        e = self.e
        TAB, pab = self.tensor_data(A, B)
        TBA, pba = self.tensor_data(B, A)
        second = pab.mediate(pba.p2, pba.p1)
        return self.morphism(TAB, TBA, e.sym(A.a, B.a), second)

    def par_sym(self, A: ChuObject, B: ChuObject) -> ChuMorphism:
        """``A⅋B → B⅋A`` as the dual of ``B*⊗A* → A*⊗B*``."""
        return self.dual_mor(self.sym(self.dual(B), self.dual(A)))

    # ------------------------------------------------------------------
    # sequencing

    def seq(self, A: ChuObject, B: ChuObject) -> ChuObject:
        """``(a⊲b, a'⊲b', m∘(r⊲s)∘δ)``."""
        e = self.e
        r = e.compose(e.m, e.seq_mor(A.r, B.r), e.delta(A.a, B.a, A.a2, B.a2))
        return ChuObject(e.seq(A.a, B.a), e.seq(A.a2, B.a2), r)

    def seq_mor(self, h: ChuMorphism, k: ChuMorphism) -> ChuMorphism:
        e = self.e
        return self.morphism(self.seq(h.src, k.src), self.seq(h.dst, k.dst),
                             e.seq_mor(h.f, k.f), e.seq_mor(h.f2, k.f2))

    def ten_seq(self, x: SetFunctor, y: SetFunctor, u: SetFunctor, v: SetFunctor) -> SetNat:
        """``(x⊲y)⊗([x,u]⊲[y,v]) → u⊲v`` as ``(ev⊲ev)∘δ``."""
        e = self.e
        return e.compose(e.seq_mor(e.ev(x, u), e.ev(y, v)),
                         e.delta(x, y, e.ihom(x, u), e.ihom(y, v)))

    def seq_hom(self, x: SetFunctor, y: SetFunctor, u: SetFunctor, v: SetFunctor) -> SetNat:
        """``[x,u]⊲[y,v] → [x⊲y, u⊲v]``, the transpose of :meth:`ten_seq`."""
        e = self.e
        return e.curry(e.seq(x, y), e.seq(e.ihom(x, u), e.ihom(y, v)), self.ten_seq(x, y, u, v))

    def delta(self, A: ChuObject, B: ChuObject, C: ChuObject, D: ChuObject,
              check_unique: bool = False) -> ChuMorphism:
        """``(A⊲B)⊗(C⊲D) → (A⊗C)⊲(B⊗D)``.

        First component: the engine interchange.  Second component: the
        mediating map into ``Pb(A⊲B, C⊲D)`` from the two legs
        ``Pb(A,C)⊲Pb(B,D) → [a,c']⊲[b,d'] → [a⊲b, c'⊲d']`` and the
        analogous one through the second projections.
        """
        e = self.e
        AB, CD = self.seq(A, B), self.seq(C, D)
        src, pb = self.tensor_data(AB, CD)
        AC, pac = self.tensor_data(A, C)
        BD, pbd = self.tensor_data(B, D)
        dst = self.seq(AC, BD)
        first = e.delta(A.a, B.a, C.a, D.a)
        leg1 = e.compose(self.seq_hom(A.a, B.a, C.a2, D.a2), e.seq_mor(pac.p1, pbd.p1))
        leg2 = e.compose(self.seq_hom(C.a, D.a, A.a2, B.a2), e.seq_mor(pac.p2, pbd.p2))
        second = pb.mediate(leg1, leg2, check_unique=check_unique, budget=e.budget)
        return self.morphism(src, dst, first, second)

    def epsilon(self, A: ChuObject, B: ChuObject, C: ChuObject, D: ChuObject) -> ChuMorphism:
        """``(A⅋B)⊲(C⅋D) → (A⊲C)⅋(B⊲D)`` as the dual of
        ``δ(A*, C*, B*, D*)``."""
        d = self.delta(self.dual(A), self.dual(C), self.dual(B), self.dual(D))
        eps = self.dual_mor(d)
        src = self.seq(self.par(A, B), self.par(C, D))
        dst = self.par(self.seq(A, C), self.seq(B, D))
        if eps.src != src or eps.dst != dst:
            raise NotChuMorphism("dualised interchange has the wrong endpoints")
        return self.morphism(src, dst, eps.f, eps.f2)

    # ------------------------------------------------------------------
    # switch

    def switch(self, A: ChuObject, B: ChuObject, C: ChuObject) -> ChuMorphism:
        """``A⊗(B⅋C) → (A⊗B)⅋C`` built componentwise from evaluations.

        With ``D = B⅋C`` (first component ``d = Pb(B*,C*)`` projecting to
        ``[b',c]`` and ``[c',b]``) and ``P = Pb(A,B)``:

        * the first component ``a⊗d → Pb((A⊗B)*, C*)`` mediates
          ``(x, β, γ) ↦ (ξ ↦ β(ξ₁ x))`` and ``(x, β, γ) ↦ (z ↦ (x, γ z))``;
        * the second component ``P⊗c' → Pb(A, D)`` mediates
          ``(ξ, z) ↦ (x ↦ (ξ₁ x, z))`` and ``(ξ, z) ↦ ((β, γ) ↦ ξ₂(γ z))``.
        """
        e = self.e
        a, b2, c, c2 = A.a, B.a2, C.a, C.a2
        a2, b = A.a2, B.a
        D = self.par(B, C)
        d = D.a
        _, pd = self.tensor_data(self.dual(B), self.dual(C))        # d = pd.obj
        AB, pab = self.tensor_data(A, B)
        P = pab.obj
        X, px = self.tensor_data(A, D)
        ABd = self.dual(AB)
        _, py = self.tensor_data(ABd, self.dual(C))
        Y = self.par(AB, C)
        ad = e.tensor(a, d)
        I = e.identity
        # L1: P⊗(a⊗d) → c
        f1 = e.compose(
            e.ev(b2, c),
            e.tensor_mor(I(b2), pd.p1),
            e.tensor_mor(e.ev(a, b2), I(d)),
            e.tensor_mor(e.tensor_mor(I(a), pab.p1), I(d)),
            e.tensor_mor(e.sym(P, a), I(d)),
            e.assoc_inv(P, a, d),
        )
        L1 = e.curry(P, ad, f1)
        # L2: c'⊗(a⊗d) → a⊗b
        f2 = e.compose(
            e.tensor_mor(I(a), e.ev(c2, b)),
            e.tensor_mor(I(a), e.tensor_mor(I(c2), pd.p2)),
            e.assoc(a, c2, d),
            e.tensor_mor(e.sym(c2, a), I(d)),
            e.assoc_inv(c2, a, d),
        )
        L2 = e.curry(c2, ad, f2)
        first = py.mediate(L1, L2)
        # M1: a⊗(P⊗c') → b'⊗c'
        Pc = e.tensor(P, c2)
        g1 = e.compose(
            e.tensor_mor(e.ev(a, b2), I(c2)),
            e.tensor_mor(e.tensor_mor(I(a), pab.p1), I(c2)),
            e.assoc_inv(a, P, c2),
        )
        M1 = e.curry(a, Pc, g1)
        # M2: d⊗(P⊗c') → a'
        g2 = e.compose(
            e.ev(b, a2),
            e.tensor_mor(I(b), pab.p2),
            e.tensor_mor(e.ev(c2, b), I(P)),
            e.tensor_mor(e.tensor_mor(I(c2), pd.p2), I(P)),
            e.tensor_mor(e.sym(d, c2), I(P)),
            e.assoc_inv(d, c2, P),
            e.tensor_mor(I(d), e.sym(P, c2)),
        )
        M2 = e.curry(d, Pc, g2)
        second = px.mediate(M1, M2)
        return self.morphism(X, Y, first, second)

    # ------------------------------------------------------------------
    # embedding, additives

    def embed(self, a: SetFunctor) -> ChuObject:
        """``(a, [a,⊥], ev)``."""
        return ChuObject(a, self.e.ihom(a, self.bottom), self.e.ev(a, self.bottom))

    def embed_mor(self, f: SetNat) -> ChuMorphism:
        return self.morphism(self.embed(f.src), self.embed(f.dst), f,
                             self.e.precompose(f, self.bottom))

    def product(self, A: ChuObject, B: ChuObject) -> tuple[ChuObject, ChuMorphism, ChuMorphism]:
        """``(a×b, a'+b', r)`` with ``r`` uncurried from a copairing."""
        e, bot = self.e, self.bottom
        ab, p1, p2 = e.product(A.a, B.a)
        s, i1, i2 = e.coproduct(A.a2, B.a2)
        k1 = e.curry(ab, A.a2, e.compose(A.r, e.tensor_mor(p1, e.identity(A.a2))))
        k2 = e.curry(ab, B.a2, e.compose(B.r, e.tensor_mor(p2, e.identity(B.a2))))
        r = e.uncurry(ab, bot, e.copair(s, k1, k2))
        P = ChuObject(ab, s, r)
        return P, self.morphism(P, A, p1, i1), self.morphism(P, B, p2, i2)

    def pair(self, P: ChuObject, h: ChuMorphism, k: ChuMorphism) -> ChuMorphism:
        e = self.e
        return self.morphism(h.src, P, e.pair(P.a, h.f, k.f), e.copair(P.a2, h.f2, k.f2))

    def coproduct(self, A: ChuObject, B: ChuObject) -> tuple[ChuObject, ChuMorphism, ChuMorphism]:
        """``(a+b, a'×b', r)``."""
        e, bot = self.e, self.bottom
        s, i1, i2 = e.coproduct(A.a, B.a)
        pr, p1, p2 = e.product(A.a2, B.a2)
        k1 = e.curry(pr, A.a, e.compose(A.r, e.tensor_mor(e.identity(A.a), p1),
                                        e.sym(pr, A.a)))
        k2 = e.curry(pr, B.a, e.compose(B.r, e.tensor_mor(e.identity(B.a), p2),
                                        e.sym(pr, B.a)))
        r = e.compose(e.uncurry(pr, bot, e.copair(s, k1, k2)), e.sym(s, pr))
        S = ChuObject(s, pr, r)
        return S, self.morphism(A, S, i1, p1), self.morphism(B, S, i2, p2)

    def copair(self, S: ChuObject, h: ChuMorphism, k: ChuMorphism) -> ChuMorphism:
        e = self.e
        return self.morphism(S, h.dst, e.copair(S.a, h.f, k.f), e.pair(S.a2, h.f2, k.f2))

    def pushout(self, h1: ChuMorphism, h2: ChuMorphism):
        """Pushout of ``h1: X → Y1`` and ``h2: X → Y2``: pushout of first
        components, pullback of second components.

        Returns ``(J, j1, j2, copair)`` where ``copair(g1, g2)`` builds the
        induced map out of ``J``.
        """
        e, bot = self.e, self.bottom
        Y1, Y2 = h1.dst, h2.dst
        po = e.pushout(h1.f, h2.f)
        pb = e.pullback(h1.f2, h2.f2)
        Q = pb.obj
        k1 = e.curry(Q, Y1.a, e.compose(Y1.r, e.tensor_mor(e.identity(Y1.a), pb.p1),
                                        e.sym(Q, Y1.a)))
        k2 = e.curry(Q, Y2.a, e.compose(Y2.r, e.tensor_mor(e.identity(Y2.a), pb.p2),
                                        e.sym(Q, Y2.a)))
        k = po.copair(k1, k2)
        r = e.compose(e.uncurry(Q, bot, k), e.sym(po.obj, Q))
        J = ChuObject(po.obj, Q, r)
        j1 = self.morphism(Y1, J, po.i1, pb.p1)
        j2 = self.morphism(Y2, J, po.i2, pb.p2)

        def copair(g1: ChuMorphism, g2: ChuMorphism) -> ChuMorphism:
            return self.morphism(J, g1.dst, po.copair(g1.f, g2.f), pb.mediate(g1.f2, g2.f2))

        return J, j1, j2, copair

    # ------------------------------------------------------------------
    # canonical maps between the three products

    def tensor_runit(self, A: ChuObject) -> ChuMorphism:
        """``A⊗I → A``."""
        e = self.e
        I = self.unit()
        T, pb = self.tensor_data(A, I)
        leg1 = e.curry(A.a, A.a2, A.r)
        leg2 = e.curry(e.unit, A.a2, e.lunit(A.a2))
        return self.morphism(T, A, e.runit(A.a), pb.mediate(leg1, leg2))

    def tensor_runit_inv(self, A: ChuObject) -> ChuMorphism:
        """``A → A⊗I``."""
        e = self.e
        T, pb = self.tensor_data(A, self.unit())
        h = e.ihom(e.unit, A.a2)
        back = e.compose(e.ev(e.unit, A.a2), e.lunit_inv(h), pb.p2)
        return self.morphism(A, T, e.runit_inv(A.a), back)

    def tensor_lunit(self, A: ChuObject) -> ChuMorphism:
        """``I⊗A → A``."""
        e = self.e
        T, pb = self.tensor_data(self.unit(), A)
        leg1 = e.curry(e.unit, A.a2, e.lunit(A.a2))
        leg2 = e.curry(A.a, A.a2, A.r)
        return self.morphism(T, A, e.lunit(A.a), pb.mediate(leg1, leg2))

    def tensor_lunit_inv(self, A: ChuObject) -> ChuMorphism:
        """``A → I⊗A``."""
        e = self.e
        T, pb = self.tensor_data(self.unit(), A)
        h = e.ihom(e.unit, A.a2)
        back = e.compose(e.ev(e.unit, A.a2), e.lunit_inv(h), pb.p1)
        return self.morphism(A, T, e.lunit_inv(A.a), back)

    def seq_runit(self, A: ChuObject) -> ChuMorphism:
        """``A⊲I_⊲ → A``."""
        e = self.e
        return self.morphism(self.seq(A, self.seq_unit()), A,
                             e.seq_runit(A.a), e.seq_runit_inv(A.a2))

    def seq_runit_inv(self, A: ChuObject) -> ChuMorphism:
        e = self.e
        return self.morphism(A, self.seq(A, self.seq_unit()),
                             e.seq_runit_inv(A.a), e.seq_runit(A.a2))

    def seq_lunit(self, A: ChuObject) -> ChuMorphism:
        """``I_⊲⊲A → A``."""
        e = self.e
        return self.morphism(self.seq(self.seq_unit(), A), A,
                             e.seq_lunit(A.a), e.seq_lunit_inv(A.a2))

    def seq_lunit_inv(self, A: ChuObject) -> ChuMorphism:
        e = self.e
        return self.morphism(A, self.seq(self.seq_unit(), A),
                             e.seq_lunit_inv(A.a), e.seq_lunit(A.a2))

    @property
    def normal(self) -> bool:
        """Whether the ⊗ and ⊲ units coincide as Chu objects."""
        return self.unit() == self.seq_unit()

    def tau_tensor(self, A: ChuObject, B: ChuObject) -> ChuMorphism:
        """``A⊗B → A⊲B`` as
        ``A⊗B ≅ (A⊲I)⊗(I⊲B) →δ (A⊗I)⊲(I⊗B) ≅ A⊲B``; needs normality."""
        if not self.normal:
            raise TypeMismatch("canonical ⊗ → ⊲ map needs the units to coincide")
        I = self.unit()
        pre = self.tensor_mor(self.seq_runit_inv(A), self.seq_lunit_inv(B))
        mid = self.delta(A, I, I, B)
        post = self.seq_mor(self.tensor_runit(A), self.tensor_lunit(B))
        return self.compose(post, self.compose(mid, pre))

    def tau_par(self, A: ChuObject, B: ChuObject) -> ChuMorphism:
        """``A⊲B → A⅋B`` as the dual of ``τ⊗(A*, B*)``."""
        t = self.dual_mor(self.tau_tensor(self.dual(A), self.dual(B)))
        if t.src != self.seq(A, B) or t.dst != self.par(A, B):
            raise NotChuMorphism("dualised ⊗ → ⊲ map has the wrong endpoints")
        return t

    def isomix(self) -> ChuIso:
        """The canonical ``I_⊗ → I_⅋`` given by ``u∘ν`` in both components,
        with its inverse when ``u∘ν`` is invertible."""
        e = self.e
        from .setval import inverse_nat
        k = e.compose(e.u, e.nu())
        fwd = self.morphism(self.unit(), self.par_unit(), k, k)
        try:
            inv = inverse_nat(k)
        except ValueError as exc:
            raise IsoNotFound(f"u∘ν is not invertible: {exc}",
                              {"unit": self.unit().sizes(), "par_unit": self.par_unit().sizes()}) from None
        bwd = self.morphism(self.par_unit(), self.unit(), inv, inv)
        return ChuIso(fwd, bwd)

    # ------------------------------------------------------------------
    # enumeration and isomorphisms

    def iter_hom(self, A: ChuObject, B: ChuObject) -> Iterator[ChuMorphism]:
        """All Chu morphisms ``A → B``.

        Second components are enumerated first and grouped by the map
        ``r∘(1⊗f')``; each first component is then matched against the
        groups through ``s∘(f⊗1)``.
        """
        e = self.e
        groups: dict[tuple, list[SetNat]] = {}
        ida = e.identity(A.a)
        for f2 in e.iter_hom(B.a2, A.a2):
            key = e.compose(A.r, e.tensor_mor(ida, f2)).components
            groups.setdefault(key, []).append(f2)
        if not groups:
            return
        idb2 = e.identity(B.a2)
        for f in e.iter_hom(A.a, B.a):
            key = e.compose(B.r, e.tensor_mor(f, idb2)).components
            for f2 in groups.get(key, ()):
                yield ChuMorphism(A, B, f, f2)

    def hom_set(self, A: ChuObject, B: ChuObject) -> list[ChuMorphism]:
        return list(self.iter_hom(A, B))

    def find_iso(self, A: ChuObject, B: ChuObject) -> ChuIso | None:
        """A two-sided Chu isomorphism witness, or ``None``."""
        e = self.e
        if A.a.sizes != B.a.sizes or A.a2.sizes != B.a2.sizes:
            return None
        from .setval import inverse_nat, iter_nats
        ida = e.identity(A.a)
        groups: dict[tuple, list[SetNat]] = {}
        for c in iter_nats(B.a2, A.a2, e.budget, injective=True):
            f2 = SetNat(B.a2, A.a2, c)
            groups.setdefault(e.compose(A.r, e.tensor_mor(ida, f2)).components, []).append(f2)
        idb2 = e.identity(B.a2)
        for c in iter_nats(A.a, B.a, e.budget, injective=True):
            f = SetNat(A.a, B.a, c)
            for f2 in groups.get(e.compose(B.r, e.tensor_mor(f, idb2)).components, ()):
                fwd = ChuMorphism(A, B, f, f2)
                bwd = self.morphism(B, A, inverse_nat(f), inverse_nat(f2))
                return ChuIso(fwd, bwd)
        return None

    def require_iso(self, A: ChuObject, B: ChuObject) -> ChuIso:
        iso = self.find_iso(A, B)
        if iso is None:
            raise IsoNotFound("no Chu isomorphism", {"lhs": A.sizes(), "rhs": B.sizes()})
        return iso

    # ------------------------------------------------------------------
    # *-autonomy

    def transpose(self, A: ChuObject, B: ChuObject, C: ChuObject,
                  h: ChuMorphism) -> ChuMorphism:
        """``Chu(A⊗B, C*) → Chu(A, (B⊗C)*)``.

        ``g = ⟨curry(f∘σ), curry(ev∘(1⊗f'₁)∘σ)⟩`` into ``Pb(B,C)`` and
        ``g' = ev∘(1⊗f'₂)`` where ``f'₁, f'₂`` are ``f'`` followed by the
        projections of ``Pb(A,B)``.
        """
        e = self.e
        a, b, c = A.a, B.a, C.a
        a2, b2 = A.a2, B.a2
        _, pab = self.tensor_data(A, B)
        BC, pbc = self.tensor_data(B, C)
        f, f2 = h.f, h.f2
        g1 = e.curry(b, a, e.compose(f, e.sym(b, a)))
        f2_1 = e.compose(pab.p1, f2)                 # c → [a,b']
        g2 = e.curry(c, a, e.compose(e.ev(a, b2), e.tensor_mor(e.identity(a), f2_1),
                                     e.sym(c, a)))
        g = pbc.mediate(g1, g2)
        f2_2 = e.compose(pab.p2, f2)                 # c → [b,a']
        gp = e.compose(e.ev(b, a2), e.tensor_mor(e.identity(b), f2_2))
        return self.morphism(A, self.dual(BC), g, gp)

    def star_autonomy(self, A: ChuObject, B: ChuObject, C: ChuObject) -> tuple[int, int]:
        """Check that :meth:`transpose` is a bijection
        ``Chu(A⊗B, C*) ≅ Chu(A, (B⊗C)*)``; returns both cardinalities."""
        lhs = self.hom_set(self.tensor(A, B), self.dual(C))
        rhs = set(self.hom_set(A, self.dual(self.tensor(B, C))))
        images = [self.transpose(A, B, C, h) for h in lhs]
        if len(set(images)) != len(images):
            raise NotChuMorphism("transpose is not injective")
        if not set(images) <= rhs or len(images) != len(rhs):
            raise NotChuMorphism("transpose is not onto",
                                 {"lhs": len(lhs), "rhs": len(rhs)})
        return len(lhs), len(rhs)
