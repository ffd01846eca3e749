"""Endoprofunctors, Day convolution, the sequencing tensor and duoidal maps.

Everything here is phrased for copresheaves on a finite symmetric monoidal
category ``E``.  Profunctors on ``C`` are copresheaves on ``C^op × C``;
Tambara modules (see :mod:`bvengine.tambara`) are copresheaves on the optic
category.  Both bases have objects indexed by pairs ``(x, x')`` as
``x * |C| + x'`` and are described by a :class:`PairContext`, which is all
the sequencing tensor needs to know about them.

Day convolution ``(P⊗Q)(e) = ∫^{a,b} E(a⊗b, e) × P(a) × Q(b)`` is computed
as one joint coend: the generators ``(a, b, h, p, q)`` are ordered
lexicographically and a single union-find pass merges them along the
relations in both variables.
"""
from __future__ import annotations

from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .finbase import DEFAULT_BUDGET, FinCategory
from .setval import (
    IllDefinedMap, QuotientSet, SetFunctor, SetNat, check_natural, iter_nats,
    hom_bifunctor, nat_from_fn, nat_from_generators, quotient, restrict,
    twisted_base, yoneda,
)

Profunctor = SetFunctor


# ---------------------------------------------------------------------------
# contexts


class PairContext:
    """A monoidal base ``E`` whose objects are pairs of objects of ``C``.

    Subclasses supply the morphisms ``pure(u, v)`` (with ``u: y → x`` and
    ``v: x' → y'``, giving ``(x,x') → (y,y')``), the strength morphisms and a
    decomposition of every morphism of ``E`` as a strength followed by a
    pure morphism.
    """

    C: FinCategory
    E: FinCategory

    @property
    def n(self) -> int:
        return self.C.n_obj

    def obj(self, x: int, x2: int) -> int:
        return x * self.C.n_obj + x2

    def split(self, e: int) -> tuple[int, int]:
        return divmod(e, self.C.n_obj)

    def pure(self, u: int, v: int) -> int:
        raise NotImplementedError

    def strength(self, m: int, x: int, x2: int) -> int:
        raise NotImplementedError

    def decompose(self, phi: int) -> tuple[int, int, int]:
        """A representative ``(m, f, g)`` with ``phi = pure(f, g) ∘ strength(m)``."""
        raise NotImplementedError

    def members(self, phi: int) -> list[tuple[int, int, int]]:
        return [self.decompose(phi)]

    # the two units -----------------------------------------------------

    @cached_property
    def tensor_unit(self) -> SetFunctor:
        i = self.C.unit
        return yoneda(self.E, self.obj(i, i))

    @cached_property
    def seq_unit(self) -> SetFunctor:
        raise NotImplementedError

    def hom_elem(self, k: int) -> int:
        """The element of the sequencing unit at ``(src k, dst k)`` naming ``k``."""
        raise NotImplementedError

    def hom_mor(self, e: int, idx: int) -> int:
        """Inverse of :meth:`hom_elem`: the morphism of ``C`` named by an element."""
        raise NotImplementedError


class ProfContext(PairContext):
    """``E = C^op × C``; morphism ``(u, v)`` has index ``u * |mor C| + v``."""

    def __init__(self, C: FinCategory):
        self.C = C
        self.E = twisted_base(C)

    def pure(self, u: int, v: int) -> int:
        return u * self.C.n_mor + v

    def strength(self, m: int, x: int, x2: int) -> int:
        if m != self.C.unit:
            raise ValueError("plain profunctors carry no strength")
        return self.E.ids[self.obj(x, x2)]

    def decompose(self, phi: int) -> tuple[int, int, int]:
        u, v = divmod(phi, self.C.n_mor)
        return self.C.unit, u, v

    @cached_property
    def seq_unit(self) -> SetFunctor:
        return hom_bifunctor(self.C)

    def hom_elem(self, k: int) -> int:
        C = self.C
        return self.seq_unit.index(self.obj(C.src[k], C.dst[k]), k)

    def hom_mor(self, e: int, idx: int) -> int:
        return self.seq_unit.carrier[e][idx]

    # duoidal unit maps ---------------------------------------------------

    def nu(self) -> SetNat:
        """``i_⊗ → i_⊲``: ``(u, v) ↦ v∘u``."""
        C, I, S = self.C, self.tensor_unit, self.seq_unit

        def fn(e: int, k: int) -> int:
            u, v = divmod(I.carrier[e][k], C.n_mor)
            return S.index(e, C.comp[v][u])

        return nat_from_fn(I, S, fn)

    def gamma(self, target: SetFunctor) -> SetNat:
        """``i_⊗ → i_⊗ ⊲ i_⊗``: ``(u, v) ↦ [i, (u, id), (id, v)]``."""
        C, I = self.C, self.tensor_unit
        i = C.unit
        idi = C.ids[i]

        def fn(e: int, k: int) -> int:
            x, x2 = self.split(e)
            u, v = divmod(I.carrier[e][k], C.n_mor)
            p = I.index(self.obj(x, i), self.pure(u, idi))
            q = I.index(self.obj(i, x2), self.pure(idi, v))
            return target.element(e, (i, p, q))

        return nat_from_fn(I, target, fn)

    def mu(self, source: SetFunctor) -> SetNat:
        """``i_⊲ ⊗ i_⊲ → i_⊲``: ``[h, φ, ψ] ↦ h₂∘(φ⊗ψ)∘h₁``."""
        C, S = self.C, self.seq_unit

        def fn(e: int, gen: tuple) -> int:
            a, b, h, p, q = gen
            u, v = divmod(h, C.n_mor)
            phi, psi = S.carrier[a][p], S.carrier[b][q]
            return S.index(e, C.compose_path(v, C.tensor_m(phi, psi), u))

        return nat_from_generators(source, S, fn)


# ---------------------------------------------------------------------------
# Day convolution over a monoidal base


def day_tensor(E: FinCategory, P: SetFunctor, Q: SetFunctor) -> SetFunctor:
    """``P ⊗ Q`` by Day convolution; elements are labelled by the minimal
    generator ``(a, b, h, p, q)`` of their class."""
    n = E.n_obj
    identities = set(E.ids)
    quots: list[QuotientSet] = []
    for e in range(n):
        ambient = [(a, b, h, p, q)
                   for a in range(n) for b in range(n)
                   for h in E.hom(E.tensor(a, b), e)
                   for p in range(P.size(a)) for q in range(Q.size(b))]
        rel = []
        for u in range(E.n_mor):
            if u in identities:
                continue  # identities only relate a generator to itself
            a, a2 = E.src[u], E.dst[u]
            Pu = P.action[u]
            for b in range(n):
                ub = E.tensor_mor[u][E.ids[b]]
                bu = E.tensor_mor[E.ids[b]][u]
                Qu = Q.action[u]
                # left variable: (a2, b, h, P(u)p, q) ~ (a, b, h∘(u⊗1), p, q)
                for h in E.hom(E.tensor(a2, b), e):
                    hu = E.comp[h][ub]
                    for p in range(P.size(a)):
                        for q in range(Q.size(b)):
                            rel.append(((a2, b, h, Pu[p], q), (a, b, hu, p, q)))
                # right variable: (b, a2, h, p, Q(u)q) ~ (b, a, h∘(1⊗u), p, q)
                for h in E.hom(E.tensor(b, a2), e):
                    hu = E.comp[h][bu]
                    for p in range(P.size(b)):
                        for q in range(Q.size(a)):
                            rel.append(((b, a2, h, p, Qu[q]), (b, a, hu, p, q)))
        quots.append(quotient(ambient, rel))
    carrier = tuple(tuple(q.rep(k) for k in range(len(q))) for q in quots)
    action = []
    for m in range(E.n_mor):
        qd = quots[E.dst[m]]
        action.append(tuple(qd.klass((a, b, E.comp[m][h], p, q))
                            for a, b, h, p, q in carrier[E.src[m]]))
    return SetFunctor(E, carrier, tuple(action), tuple(quots))


def day_tensor_mor(f: SetNat, g: SetNat, src: SetFunctor, dst: SetFunctor) -> SetNat:
    """``f ⊗ g`` between Day tensors ``src = f.src⊗g.src`` and ``dst``."""
    fc, gc = f.components, g.components
    return nat_from_fn(src, dst, lambda e, k: dst.element(
        e, _remap(src.carrier[e][k], fc, gc)), check=False)


def _remap(gen: tuple, fc, gc) -> tuple:
    a, b, h, p, q = gen
    return (a, b, h, fc[a][p], gc[b][q])


def day_assoc(E: FinCategory, PQ_R: SetFunctor, PQ: SetFunctor,
              P_QR: SetFunctor, QR: SetFunctor) -> SetNat:
    """``(P⊗Q)⊗R → P⊗(Q⊗R)``: ``[h, [k, p, q], r] ↦ [h∘(k⊗1), p, [id, q, r]]``."""

    def fn(e: int, gen: tuple) -> int:
        ab, c, h, s, r = gen
        a, b, k, p, q = PQ.carrier[ab][s]
        bc = E.tensor(b, c)
        inner = QR.element(bc, (b, c, E.ids[bc], q, r))
        hk = E.comp[h][E.tensor_mor[k][E.ids[c]]]
        return P_QR.element(e, (a, bc, hk, p, inner))

    return nat_from_generators(PQ_R, P_QR, fn, check=False)


def day_assoc_inv(E: FinCategory, P_QR: SetFunctor, QR: SetFunctor,
                  PQ_R: SetFunctor, PQ: SetFunctor) -> SetNat:
    """``P⊗(Q⊗R) → (P⊗Q)⊗R``: ``[h, p, [k, q, r]] ↦ [h∘(1⊗k), [id, p, q], r]``."""

    def fn(e: int, gen: tuple) -> int:
        a, bc, h, p, s = gen
        b, c, k, q, r = QR.carrier[bc][s]
        ab = E.tensor(a, b)
        inner = PQ.element(ab, (a, b, E.ids[ab], p, q))
        hk = E.comp[h][E.tensor_mor[E.ids[a]][k]]
        return PQ_R.element(e, (ab, c, hk, inner, r))

    return nat_from_generators(P_QR, PQ_R, fn, check=False)


def day_lunit(E: FinCategory, IP: SetFunctor, I: SetFunctor, P: SetFunctor) -> SetNat:
    """``I⊗P → P`` for ``I = E(i,-)``: ``[h, u, p] ↦ P(h∘(u⊗1))(p)``."""

    def fn(e: int, gen: tuple) -> int:
        a, b, h, u, p = gen
        u = I.carrier[a][u]
        return P.action[E.comp[h][E.tensor_mor[u][E.ids[b]]]][p]

    return nat_from_generators(IP, P, fn, check=False)


def day_runit(E: FinCategory, PI: SetFunctor, I: SetFunctor, P: SetFunctor) -> SetNat:
    """``P⊗I → P``: ``[h, p, u] ↦ P(h∘(1⊗u))(p)``."""

    def fn(e: int, gen: tuple) -> int:
        a, b, h, p, u = gen
        u = I.carrier[b][u]
        return P.action[E.comp[h][E.tensor_mor[E.ids[a]][u]]][p]

    return nat_from_generators(PI, P, fn, check=False)


def day_lunit_inv(E: FinCategory, P: SetFunctor, I: SetFunctor, IP: SetFunctor) -> SetNat:
    i = E.unit
    uid = I.index(i, E.ids[i])
    return nat_from_fn(P, IP, lambda e, p: IP.element(e, (i, e, E.ids[e], uid, p)),
                       check=False)


def day_runit_inv(E: FinCategory, P: SetFunctor, I: SetFunctor, PI: SetFunctor) -> SetNat:
    i = E.unit
    uid = I.index(i, E.ids[i])
    return nat_from_fn(P, PI, lambda e, p: PI.element(e, (e, i, E.ids[e], p, uid)),
                       check=False)


def day_sym(E: FinCategory, PQ: SetFunctor, QP: SetFunctor) -> SetNat:
    """``P⊗Q → Q⊗P``: ``[h, p, q] ↦ [h∘σ_{b,a}, q, p]``."""

    def fn(e: int, gen: tuple) -> int:
        a, b, h, p, q = gen
        return QP.element(e, (b, a, E.comp[h][E.symmetry[b][a]], q, p))

    return nat_from_generators(PQ, QP, fn, check=False)


# ---------------------------------------------------------------------------
# Day hom


def shifted(Q: SetFunctor, e: int) -> SetFunctor:
    """The copresheaf ``Q(- ⊗ e)``."""
    E = Q.base
    ide = E.ids[e]
    obj_map = [E.tensor(x, e) for x in range(E.n_obj)]
    mor_map = [E.tensor_mor[u][ide] for u in range(E.n_mor)]
    return restrict(Q, E, obj_map, mor_map)


def day_hom(P: SetFunctor, Q: SetFunctor, budget: int = DEFAULT_BUDGET) -> SetFunctor:
    """``[P, Q](e) = Nat(P, Q(-⊗e))``; elements are labelled by component tables.

    The action of ``m: e → e'`` post-composes with ``Q(1 ⊗ m)``.
    """
    E = P.base
    carrier = []
    for e in range(E.n_obj):
        carrier.append(tuple(iter_nats(P, shifted(Q, e), budget)))
    index = [{a: i for i, a in enumerate(c)} for c in carrier]
    action = []
    for m in range(E.n_mor):
        e, e2 = E.src[m], E.dst[m]
        row = []
        for alpha in carrier[e]:
            moved = tuple(tuple(Q.action[E.tensor_mor[E.ids[x]][m]][y] for y in comp)
                          for x, comp in enumerate(alpha))
            row.append(index[e2][moved])
        action.append(tuple(row))
    return SetFunctor(E, tuple(carrier), tuple(action))


def day_ev(E: FinCategory, P_H: SetFunctor, H: SetFunctor, Q: SetFunctor) -> SetNat:
    """``P ⊗ [P,Q] → Q``: ``[h, p, α] ↦ Q(h)(α_c(p))``."""

    def fn(x: int, gen: tuple) -> int:
        c, e, h, p, a = gen
        alpha = H.carrier[e][a]
        return Q.action[h][alpha[c][p]]

    return nat_from_generators(P_H, Q, fn, check=False)


def day_curry(E: FinCategory, P: SetFunctor, X: SetFunctor, PX: SetFunctor,
              f: SetNat, H: SetFunctor) -> SetNat:
    """Transpose of ``f: P⊗X → Q`` to ``X → [P, Q] = H``.

    ``ξ ∈ X(e)`` goes to ``α`` with ``α_c(p) = f([id_{c⊗e}, p, ξ])``.
    """
    fc = f.components

    def fn(e: int, xi: int) -> int:
        alpha = []
        for c in range(E.n_obj):
            ce = E.tensor(c, e)
            alpha.append(tuple(fc[ce][PX.element(ce, (c, e, E.ids[ce], p, xi))]
                               for p in range(P.size(c))))
        return H.index(e, tuple(alpha))

    return nat_from_fn(X, H, fn, check=False)


def day_curry_tables(E: FinCategory, P: SetFunctor, X: SetFunctor, PX: SetFunctor,
                     f: SetNat) -> list[list[tuple]]:
    """Component tables of the transpose of ``f: P⊗X → Q`` without building
    ``[P, Q]``: entry ``[e][ξ]`` is the label ``α`` that :func:`day_curry`
    would send ``ξ`` to."""
    fc = f.components
    out = []
    for e in range(E.n_obj):
        row = []
        for xi in range(X.size(e)):
            alpha = []
            for c in range(E.n_obj):
                ce = E.tensor(c, e)
                alpha.append(tuple(fc[ce][PX.element(ce, (c, e, E.ids[ce], p, xi))]
                                   for p in range(P.size(c))))
            row.append(tuple(alpha))
        out.append(row)
    return out


def day_hom_image(E: FinCategory, Q: SetFunctor, tables: Sequence[list[list[tuple]]]) -> SetFunctor:
    """The subfunctor of ``[P, Q]`` spanned by the given component tables,
    which must come from natural maps into ``[P, Q]`` (so the span is closed
    under the action)."""
    carrier = []
    for e in range(E.n_obj):
        carrier.append(tuple(sorted({t for tab in tables for t in tab[e]})))
    index = [{a: i for i, a in enumerate(c)} for c in carrier]
    action = []
    for m in range(E.n_mor):
        e, e2 = E.src[m], E.dst[m]
        row = []
        for alpha in carrier[e]:
            moved = tuple(tuple(Q.action[E.tensor_mor[E.ids[x]][m]][y] for y in comp)
                          for x, comp in enumerate(alpha))
            row.append(index[e2][moved])
        action.append(tuple(row))
    return SetFunctor(E, tuple(carrier), tuple(action))


# ---------------------------------------------------------------------------
# sequencing tensor


def seq_tensor(ctx: PairContext, P: SetFunctor, Q: SetFunctor,
               check: bool = False) -> SetFunctor:
    """``(P⊲Q)(x,x') = ∫^c P(x,c) × Q(c,x')``.

    Elements are labelled by minimal generators ``(c, p, q)``.  A morphism
    ``φ`` of the base is decomposed as ``pure(f, g) ∘ strength(m)`` and acts
    on ``[c, p, q]`` by strengthening both factors by ``m`` and applying
    ``f`` on the left factor, ``g`` on the right one.  With ``check`` every
    generator of every class is pushed along every representative of every
    base morphism and the results must agree.
    """
    C, E = ctx.C, ctx.E
    n = C.n_obj
    quots = []
    for e in range(E.n_obj):
        x, x2 = ctx.split(e)
        ambient = [(c, p, q) for c in range(n)
                   for p in range(P.size(ctx.obj(x, c)))
                   for q in range(Q.size(ctx.obj(c, x2)))]
        rel = []
        for k in range(C.n_mor):
            c, c2 = C.src[k], C.dst[k]
            Pk = P.action[ctx.pure(C.ids[x], k)]
            Qk = Q.action[ctx.pure(k, C.ids[x2])]
            for p in range(P.size(ctx.obj(x, c))):
                for q in range(Q.size(ctx.obj(c2, x2))):
                    rel.append(((c2, Pk[p], q), (c, p, Qk[q])))
        quots.append(quotient(ambient, rel))
    carrier = tuple(tuple(q.rep(k) for k in range(len(q))) for q in quots)
    action = []
    for phi in range(E.n_mor):
        e, e2 = E.src[phi], E.dst[phi]
        x, x2 = ctx.split(e)
        qd = quots[e2]
        reps = ctx.members(phi) if check else [ctx.decompose(phi)]
        gens = quots[e].classes if check else tuple((g,) for g in carrier[e])
        row = []
        for cls in gens:
            val = None
            for m, f, g in reps:
                for gen in cls:
                    out = qd.klass(_seq_move(ctx, P, Q, x, x2, m, f, g, gen))
                    if val is None:
                        val = out
                    elif val != out:
                        raise IllDefinedMap("sequencing action depends on representatives",
                                            (E.mor_labels[phi], gen))
            row.append(val)
        action.append(tuple(row))
    return SetFunctor(E, carrier, tuple(action), tuple(quots))


def _seq_move(ctx: PairContext, P: SetFunctor, Q: SetFunctor, x: int, x2: int,
              m: int, f: int, g: int, gen: tuple) -> tuple:
    C = ctx.C
    c, p, q = gen
    mc = C.tensor(m, c)
    p = P.action[ctx.strength(m, x, c)][p]
    q = Q.action[ctx.strength(m, c, x2)][q]
    p = P.action[ctx.pure(f, C.ids[mc])][p]
    q = Q.action[ctx.pure(C.ids[mc], g)][q]
    return (mc, p, q)


def seq_right_lifted(ctx: PairContext, P: SetFunctor, Q: SetFunctor,
                     PQ: SetFunctor) -> list[tuple]:
    """Compare the action of ``P⊲Q`` with the one obtained by strengthening
    on the right (``c ↦ c⊗m``, slid through ``σ``).

    Returns the list of disagreements ``(morphism, element)``; empty when the
    two liftings coincide.
    """
    C, E = ctx.C, ctx.E
    bad = []
    for phi in range(E.n_mor):
        e, e2 = E.src[phi], E.dst[phi]
        x, x2 = ctx.split(e)
        m, f, g = ctx.decompose(phi)
        f2 = C.comp[C.symmetry[m][x]][f]            # y → x⊗m
        g2 = C.comp[g][C.symmetry[x2][m]]           # x'⊗m → y'
        for k, (c, p, q) in enumerate(PQ.carrier[e]):
            cm = C.tensor(c, m)
            rp = _right_strength(ctx, P, m, x, c, p)
            rq = _right_strength(ctx, Q, m, c, x2, q)
            rp = P.action[ctx.pure(f2, C.ids[cm])][rp]
            rq = Q.action[ctx.pure(C.ids[cm], g2)][rq]
            if PQ.element(e2, (cm, rp, rq)) != PQ.action[phi][k]:
                bad.append((E.mor_labels[phi], PQ.carrier[e][k]))
    return bad


def _right_strength(ctx: PairContext, P: SetFunctor, m: int, x: int, x2: int,
                    p: int) -> int:
    """Move ``p ∈ P(x,x')`` to ``P(x⊗m, x'⊗m)`` via the left strength and σ."""
    C = ctx.C
    p = P.action[ctx.strength(m, x, x2)][p]
    sw = ctx.pure(C.symmetry[x][m], C.symmetry[m][x2])
    return P.action[sw][p]


def seq_tensor_mor(f: SetNat, g: SetNat, src: SetFunctor, dst: SetFunctor) -> SetNat:
    """``f ⊲ g``: ``[c, p, q] ↦ [c, f(p), g(q)]``."""
    n = _pair_n(src)
    fc, gc = f.components, g.components

    def fn(e: int, k: int) -> int:
        x, x2 = divmod(e, n)
        c, p, q = src.carrier[e][k]
        return dst.element(e, (c, fc[x * n + c][p], gc[c * n + x2][q]))

    return nat_from_fn(src, dst, fn, check=False)


def _pair_n(F: SetFunctor) -> int:
    n2 = F.base.n_obj
    n = int(round(n2 ** 0.5))
    if n * n != n2:
        raise ValueError("base is not a pair category")
    return n


def seq_assoc(ctx: PairContext, PQ_R: SetFunctor, PQ: SetFunctor,
              P_QR: SetFunctor, QR: SetFunctor) -> SetNat:
    """``(P⊲Q)⊲R → P⊲(Q⊲R)``: ``[d, [c, p, q], r] ↦ [c, p, [d, q, r]]``."""

    def fn(e: int, gen: tuple) -> int:
        x, x2 = ctx.split(e)
        d, s, r = gen
        c, p, q = PQ.carrier[ctx.obj(x, d)][s]
        inner = QR.element(ctx.obj(c, x2), (d, q, r))
        return P_QR.element(e, (c, p, inner))

    return nat_from_generators(PQ_R, P_QR, fn, check=False)


def seq_assoc_inv(ctx: PairContext, P_QR: SetFunctor, QR: SetFunctor,
                  PQ_R: SetFunctor, PQ: SetFunctor) -> SetNat:

    def fn(e: int, gen: tuple) -> int:
        x, x2 = ctx.split(e)
        c, p, s = gen
        d, q, r = QR.carrier[ctx.obj(c, x2)][s]
        inner = PQ.element(ctx.obj(x, d), (c, p, q))
        return PQ_R.element(e, (d, inner, r))

    return nat_from_generators(P_QR, PQ_R, fn, check=False)


def seq_lunit(ctx: PairContext, UP: SetFunctor, P: SetFunctor) -> SetNat:
    """``1⊲P → P``: ``[c, k, p] ↦ P(pure(k, id))(p)``."""
    C = ctx.C

    def fn(e: int, gen: tuple) -> int:
        x, x2 = ctx.split(e)
        c, k, p = gen
        k = ctx.hom_mor(ctx.obj(x, c), k)
        return P.action[ctx.pure(k, C.ids[x2])][p]

    return nat_from_generators(UP, P, fn, check=False)


def seq_runit(ctx: PairContext, PU: SetFunctor, P: SetFunctor) -> SetNat:
    """``P⊲1 → P``: ``[c, p, k] ↦ P(pure(id, k))(p)``."""
    C = ctx.C

    def fn(e: int, gen: tuple) -> int:
        x, x2 = ctx.split(e)
        c, p, k = gen
        k = ctx.hom_mor(ctx.obj(c, x2), k)
        return P.action[ctx.pure(C.ids[x], k)][p]

    return nat_from_generators(PU, P, fn, check=False)


def seq_lunit_inv(ctx: PairContext, P: SetFunctor, UP: SetFunctor) -> SetNat:
    C = ctx.C

    def fn(e: int, p: int) -> int:
        x, _ = ctx.split(e)
        return UP.element(e, (x, ctx.hom_elem(C.ids[x]), p))

    return nat_from_fn(P, UP, fn, check=False)


def seq_runit_inv(ctx: PairContext, P: SetFunctor, PU: SetFunctor) -> SetNat:
    C = ctx.C

    def fn(e: int, p: int) -> int:
        _, x2 = ctx.split(e)
        return PU.element(e, (x2, p, ctx.hom_elem(C.ids[x2])))

    return nat_from_fn(P, PU, fn, check=False)


# ---------------------------------------------------------------------------
# duoidal interchange


def duoidal_delta(ctx: PairContext, src: SetFunctor, PQ: SetFunctor, RS: SetFunctor,
                  dst: SetFunctor, PR_at, QS_at, check: bool = True) -> SetNat:
    """``(P⊲Q)⊗(R⊲S) → (P⊗R)⊲(Q⊗S)``.

    ``src`` is the Day tensor of ``PQ = P⊲Q`` and ``RS = R⊲S``; ``dst`` the
    sequencing tensor of ``P⊗R`` and ``Q⊗S`` (passed as ``PR_at`` and
    ``QS_at``).  On a generator ``[h, [c,p,q], [d,r,s]]`` with
    ``h: a⊗b → e`` the map returns ``dst(h)`` applied to
    ``[c⊗d, [id, p, r], [id, q, s]]``.  With ``check`` it is evaluated on
    every member of every inner and outer class and must be constant on each
    class; the result is then checked for naturality.
    """
    C, E = ctx.C, ctx.E
    PR, QS = PR_at, QS_at

    def core(a: int, b: int, s1: tuple, s2: tuple) -> tuple[int, int]:
        a1, a2 = ctx.split(a)
        b1, b2 = ctx.split(b)
        c, p, q = s1
        d, r, s = s2
        cd = C.tensor(c, d)
        left, right = ctx.obj(a1, c), ctx.obj(b1, d)
        lt = PR.element(ctx.obj(C.tensor(a1, b1), cd),
                        (left, right, E.ids[E.tensor(left, right)], p, r))
        left, right = ctx.obj(c, a2), ctx.obj(d, b2)
        rt = QS.element(ctx.obj(cd, C.tensor(a2, b2)),
                        (left, right, E.ids[E.tensor(left, right)], q, s))
        ab = E.tensor(a, b)
        return ab, dst.element(ab, (cd, lt, rt))

    def fn(e: int, gen: tuple) -> int:
        a, b, h, k1, k2 = gen
        if check:
            outs = {dst.action[h][core(a, b, g1, g2)[1]]
                    for g1 in PQ.presentation[a].classes[k1]
                    for g2 in RS.presentation[b].classes[k2]}
            if len(outs) != 1:
                raise IllDefinedMap("interchange depends on sequencing representatives",
                                    (E.objects[e], gen))
            return outs.pop()
        ab, val = core(a, b, PQ.carrier[a][k1], RS.carrier[b][k2])
        return dst.action[h][val]

    return nat_from_generators(src, dst, fn, check=check)


def bimodule_check(ctx: PairContext, P: SetFunctor) -> bool:
    """Left and right actions of ``C`` on a profunctor view commute and are
    functorial (both follow from functoriality on ``E``, checked directly)."""
    C = ctx.C
    for u in range(C.n_mor):
        for v in range(C.n_mor):
            both = P.action[ctx.pure(u, v)]
            y, x = C.src[u], C.dst[u]
            x2 = C.src[v]
            left = P.action[ctx.pure(u, C.ids[C.dst[v]])]
            right = P.action[ctx.pure(C.ids[x], v)]
            for k in range(P.size(ctx.obj(x, x2))):
                if both[k] != left[right[k]]:
                    return False
                r2 = P.action[ctx.pure(C.ids[y], v)]
                l2 = P.action[ctx.pure(u, C.ids[x2])]
                if both[k] != r2[l2[k]]:
                    return False
    return True


def underlying(ctx: PairContext, T: SetFunctor) -> SetFunctor:
    """Restriction of a copresheaf on ``ctx.E`` to ``C^op × C`` along ``pure``."""
    base = twisted_base(ctx.C)
    m = ctx.C.n_mor
    mor_map = [ctx.pure(u, v) for u in range(m) for v in range(m)]
    return restrict(T, base, list(range(base.n_obj)), mor_map)


def strength_component(ctx: PairContext, T: SetFunctor, m: int, x: int, x2: int,
                       elements: Iterable[int] | None = None) -> tuple[int, ...]:
    """``ζ_m: T(x,x') → T(m⊗x, m⊗x')`` as an index array."""
    act = T.action[ctx.strength(m, x, x2)]
    if elements is None:
        return tuple(act)
    return tuple(act[k] for k in elements)


def relabel(F: SetFunctor, labels: Iterable[Hashable]) -> SetFunctor:
    """Same functor with new element labels (one iterable per object)."""
    return SetFunctor(F.base, tuple(tuple(c) for c in labels), F.action)


__all__ = [
    "PairContext", "ProfContext", "Profunctor", "day_tensor", "day_tensor_mor",
    "day_hom", "day_ev", "day_curry", "seq_tensor", "seq_tensor_mor",
    "duoidal_delta", "check_natural", "underlying", "strength_component",
]
