"""Coend optics and strong profunctors as copresheaves on the optic category.

``Optic(C)((x,x'), (y,y')) = ∫^m C(y, m⊗x) × C(m⊗x', y')``.  Each hom is a
:class:`~bvengine.setval.QuotientSet` of triples ``(m, f, g)`` under sliding
along ``k: m → m2``.  Composition nests combs on stored representatives and
looks the result up in the target quotient; :func:`validate_optic` checks
that this does not depend on the representatives.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .finbase import DEFAULT_BUDGET, FinCategory, make_category, validate_category
from .prof import (
    PairContext, day_hom, day_lunit, day_tensor, seq_lunit_inv, seq_tensor,
    underlying,
)
from .setval import (
    IllDefinedMap, QuotientSet, SetFunctor, SetNat, UnionFind, identity_nat,
    nat_from_fn, quotient, twisted_base, validate_functor, yoneda,
)

TambaraModule = SetFunctor


@dataclass(frozen=True, eq=False)
class OpticCategory:
    C: FinCategory
    category: FinCategory
    homs: dict[tuple[int, int], QuotientSet]
    mor_of: dict[tuple[int, int, int], int]
    reps: tuple[tuple[int, int, int], ...]

    @property
    def n_obj(self) -> int:
        return self.category.n_obj

    def obj(self, x: int, x2: int) -> int:
        return x * self.C.n_obj + x2

    def lookup(self, src: int, dst: int, triple: tuple[int, int, int]) -> int:
        q = self.homs[src, dst]
        return self.mor_of[src, dst, q.klass(triple)]

    def members(self, phi: int) -> tuple[tuple[int, int, int], ...]:
        E = self.category
        q = self.homs[E.src[phi], E.dst[phi]]
        return q.classes[q.klass(self.reps[phi])]

    def hom_size(self, src: int, dst: int) -> int:
        return len(self.homs[src, dst])


def optic_hom(C: FinCategory, x: int, x2: int, y: int, y2: int) -> QuotientSet:
    """``∫^m C(y, m⊗x) × C(m⊗x', y')`` by union-find over the sliding pairs."""
    n = C.n_obj
    ambient = [(m, f, g) for m in range(n)
               for f in C.hom(y, C.tensor(m, x))
               for g in C.hom(C.tensor(m, x2), y2)]
    rel = []
    for k in range(C.n_mor):
        m, m2 = C.src[k], C.dst[k]
        kx = C.tensor_m(k, C.ids[x])
        kx2 = C.tensor_m(k, C.ids[x2])
        for f in C.hom(y, C.tensor(m, x)):
            for g in C.hom(C.tensor(m2, x2), y2):
                rel.append(((m2, C.comp[kx][f], g), (m, f, C.comp[g][kx2])))
    return quotient(ambient, rel)


def _compose(C: FinCategory, second: tuple[int, int, int],
             first: tuple[int, int, int]) -> tuple[int, int, int]:
    m2, f2, g2 = second
    m1, f1, g1 = first
    f = C.comp[C.tensor_m(C.ids[m2], f1)][f2]
    g = C.comp[g2][C.tensor_m(C.ids[m2], g1)]
    return C.tensor(m2, m1), f, g


def _tensor(C: FinCategory, left: tuple[int, int, int], right: tuple[int, int, int],
            x: int, x2: int, u: int, u2: int) -> tuple[int, int, int]:
    """Optic tensor of ``left: (x,x') → ·`` and ``right: (u,u') → ·``."""
    m, f, g = left
    n, f2, g2 = right
    idm, idu = C.ids[m], C.ids[u]
    shuffle_f = C.tensor_m(C.tensor_m(idm, C.symmetry[x][n]), idu)
    shuffle_g = C.tensor_m(C.tensor_m(idm, C.symmetry[n][x2]), C.ids[u2])
    return (C.tensor(m, n), C.comp[shuffle_f][C.tensor_m(f, f2)],
            C.comp[C.tensor_m(g, g2)][shuffle_g])


def build_optic(C: FinCategory, check: bool = True) -> OpticCategory:
    """The optic category with its inherited symmetric monoidal structure.

    With ``check`` the category is validated and composition/tensor are
    verified independent of representatives on every pair of members.
    """
    n = C.n_obj
    pairs = [(x, x2) for x in range(n) for x2 in range(n)]
    objects = [f"({C.objects[x]},{C.objects[x2]})" for x, x2 in pairs]
    homs: dict[tuple[int, int], QuotientSet] = {}
    morphisms = []
    mor_of: dict[tuple[int, int, int], int] = {}
    reps = []
    for s, (x, x2) in enumerate(pairs):
        for d, (y, y2) in enumerate(pairs):
            q = optic_hom(C, x, x2, y, y2)
            homs[s, d] = q
            for k in range(len(q)):
                m, f, g = q.rep(k)
                mor_of[s, d, k] = len(morphisms)
                reps.append((m, f, g))
                morphisms.append((f"<{C.objects[m]}|{C.mor_labels[f]}|{C.mor_labels[g]}>"
                                  f"{objects[s]}->{objects[d]}", s, d))

    def look(s: int, d: int, t: tuple[int, int, int]) -> int:
        return mor_of[s, d, homs[s, d].klass(t)]

    n_m = len(morphisms)
    src = [s for _, s, _ in morphisms]
    dst = [d for _, _, d in morphisms]
    comp = {}
    for a in range(n_m):
        for b in range(n_m):
            if dst[a] == src[b]:
                comp[b, a] = look(src[a], dst[b], _compose(C, reps[b], reps[a]))
    ids = [look(s, s, (C.unit, C.ids[x], C.ids[x2])) for s, (x, x2) in enumerate(pairs)]
    tobj = [[C.tensor(x, u) * n + C.tensor(x2, u2) for u, u2 in pairs] for x, x2 in pairs]
    tmor = {}
    for a in range(n_m):
        x, x2 = pairs[src[a]]
        y, y2 = pairs[dst[a]]
        for b in range(n_m):
            u, u2 = pairs[src[b]]
            v, v2 = pairs[dst[b]]
            s = C.tensor(x, u) * n + C.tensor(x2, u2)
            d = C.tensor(y, v) * n + C.tensor(y2, v2)
            tmor[a, b] = look(s, d, _tensor(C, reps[a], reps[b], x, x2, u, u2))
    sym = []
    for x, x2 in pairs:
        row = []
        for y, y2 in pairs:
            xs = C.tensor(x, y) * n + C.tensor(x2, y2)
            ys = C.tensor(y, x) * n + C.tensor(y2, x2)
            row.append(look(xs, ys, (C.unit, C.symmetry[y][x], C.symmetry[x2][y2])))
        sym.append(row)
    cat = make_category(objects, morphisms, comp, ids, tobj, tmor,
                        C.unit * n + C.unit, sym, name=f"Optic({C.name})")
    O = OpticCategory(C, cat, homs, mor_of, tuple(reps))
    if check:
        validate_optic(O)
    return O


def validate_optic(O: OpticCategory) -> bool:
    """Category axioms plus representative independence of ∘ and ⊗."""
    validate_category(O.category)
    C, E = O.C, O.category
    for a in range(E.n_mor):
        for b in E.out_mors[E.dst[a]]:
            target = E.comp[b][a]
            for ra in O.members(a):
                for rb in O.members(b):
                    if O.lookup(E.src[a], E.dst[b], _compose(C, rb, ra)) != target:
                        raise IllDefinedMap("optic composition depends on representatives",
                                            (E.mor_labels[b], E.mor_labels[a]))
    n = C.n_obj
    for a in range(E.n_mor):
        x, x2 = divmod(E.src[a], n)
        for b in range(E.n_mor):
            u, u2 = divmod(E.src[b], n)
            target = E.tensor_mor[a][b]
            for ra in O.members(a):
                for rb in O.members(b):
                    got = O.lookup(E.src[target], E.dst[target],
                                   _tensor(C, ra, rb, x, x2, u, u2))
                    if got != target:
                        raise IllDefinedMap("optic tensor depends on representatives",
                                            (E.mor_labels[a], E.mor_labels[b]))
    return True


# ---------------------------------------------------------------------------
# the optic context


class OpticContext(PairContext):
    """Pair context for Tambara modules: ``E = Optic(C)``."""

    def __init__(self, C: FinCategory | OpticCategory):
        self.optic = C if isinstance(C, OpticCategory) else build_optic(C)
        self.C = self.optic.C
        self.E = self.optic.category

    def pure(self, u: int, v: int) -> int:
        C = self.C
        s = self.obj(C.dst[u], C.src[v])
        d = self.obj(C.src[u], C.dst[v])
        return self.optic.lookup(s, d, (C.unit, u, v))

    def strength(self, m: int, x: int, x2: int) -> int:
        C = self.C
        mx, mx2 = C.tensor(m, x), C.tensor(m, x2)
        return self.optic.lookup(self.obj(x, x2), self.obj(mx, mx2),
                                 (m, C.ids[mx], C.ids[mx2]))

    def decompose(self, phi: int) -> tuple[int, int, int]:
        return self.optic.reps[phi]

    def members(self, phi: int) -> list[tuple[int, int, int]]:
        return list(self.optic.members(phi))

    @cached_property
    def seq_unit(self) -> SetFunctor:
        return self.tensor_unit

    def hom_elem(self, k: int) -> int:
        C = self.C
        x, x2 = C.src[k], C.dst[k]
        i = C.unit
        phi = self.optic.lookup(self.obj(i, i), self.obj(x, x2), (x2, k, C.ids[x2]))
        return self.tensor_unit.index(self.obj(x, x2), phi)

    def hom_mor(self, e: int, idx: int) -> int:
        m, f, g = self.optic.reps[self.tensor_unit.carrier[e][idx]]
        return self.C.comp[g][f]

    def nu(self) -> SetNat:
        return identity_nat(self.tensor_unit)

    def gamma(self, target: SetFunctor) -> SetNat:
        return seq_lunit_inv(self, self.tensor_unit, target)

    def mu(self, source: SetFunctor) -> SetNat:
        """``i_⊲ ⊗ i_⊲ → i_⊲``: tensor the two optics, then compose with ``h``."""
        E, Y = self.E, self.tensor_unit

        def fn(e: int, k: int) -> int:
            a, b, h, p, q = source.carrier[e][k]
            o = E.tensor_mor[Y.carrier[a][p]][Y.carrier[b][q]]
            return Y.index(e, E.comp[h][o])

        return nat_from_fn(source, Y, fn)

    def day_unitor(self, source: SetFunctor) -> SetNat:
        return day_lunit(self.E, source, self.tensor_unit, self.tensor_unit)


# ---------------------------------------------------------------------------
# modules


def representable_context(ctx: OpticContext, a: tuple[int, int]) -> SetFunctor:
    """``y_a = Optic(a, -)``."""
    return yoneda(ctx.E, ctx.obj(*a))


def intervention(ctx: OpticContext, a: tuple[int, int], check: bool = True) -> SetFunctor:
    """``C_a(x, x') = C(a⊗x, a'⊗x')`` with optics acting by whiskering.

    ``(m, f, g)`` sends ``φ`` to
    ``(1⊗g)∘(σ_{m,a'}⊗1)∘(1_m⊗φ)∘(σ_{a,m}⊗1)∘(1⊗f)``.
    """
    C, E = ctx.C, ctx.E
    a1, a2 = a
    carrier = []
    for e in range(E.n_obj):
        x, x2 = ctx.split(e)
        carrier.append(C.hom(C.tensor(a1, x), C.tensor(a2, x2)))
    index = [{f: i for i, f in enumerate(c)} for c in carrier]
    action = []
    for phi in range(E.n_mor):
        e, e2 = E.src[phi], E.dst[phi]
        x, x2 = ctx.split(e)
        reps = ctx.members(phi) if check else [ctx.decompose(phi)]
        row = []
        for k in carrier[e]:
            outs = {_whisker(C, a1, a2, x, x2, rep, k) for rep in reps}
            if len(outs) != 1:
                raise IllDefinedMap("intervention action depends on representatives",
                                    (E.mor_labels[phi], C.mor_labels[k]))
            row.append(index[e2][outs.pop()])
        action.append(tuple(row))
    F = SetFunctor(E, tuple(carrier), tuple(action))
    if check:
        validate_functor(F)
    return F


def _whisker(C: FinCategory, a1: int, a2: int, x: int, x2: int,
             rep: tuple[int, int, int], k: int) -> int:
    m, f, g = rep
    ida1, ida2 = C.ids[a1], C.ids[a2]
    return C.compose_path(
        C.tensor_m(ida2, g),
        C.tensor_m(C.symmetry[m][a2], C.ids[x2]),
        C.tensor_m(C.ids[m], k),
        C.tensor_m(C.symmetry[a1][m], C.ids[x]),
        C.tensor_m(ida1, f),
    )


def optic_action(ctx: OpticContext, a: tuple[int, int], b: tuple[int, int],
                 o: int, Ca: SetFunctor, Cb: SetFunctor) -> SetNat:
    """The map ``C_a → C_b`` induced by an optic ``o: a → b``:
    ``φ ↦ (g⊗1)∘(1_m⊗φ)∘(f⊗1)``."""
    C = ctx.C
    m, f, g = ctx.decompose(o)

    def fn(e: int, i: int) -> int:
        x, x2 = ctx.split(e)
        k = Ca.carrier[e][i]
        out = C.compose_path(C.tensor_m(g, C.ids[x2]), C.tensor_m(C.ids[m], k),
                             C.tensor_m(f, C.ids[x]))
        return Cb.index(e, out)

    return nat_from_fn(Ca, Cb, fn)


def stprof_tensor(ctx: OpticContext, P: SetFunctor, Q: SetFunctor) -> SetFunctor:
    return day_tensor(ctx.E, P, Q)


def stprof_seq(ctx: OpticContext, P: SetFunctor, Q: SetFunctor) -> SetFunctor:
    """Sequencing with the induced strength; representative independence and
    functoriality of the re-encoded copresheaf are both checked."""
    S = seq_tensor(ctx, P, Q, check=True)
    validate_functor(S)
    return S


def stprof_hom(ctx: OpticContext, P: SetFunctor, Q: SetFunctor,
               budget: int = DEFAULT_BUDGET) -> SetFunctor:
    return day_hom(P, Q, budget)


def stprof_dual(ctx: OpticContext, P: SetFunctor, budget: int = DEFAULT_BUDGET) -> SetFunctor:
    return day_hom(P, ctx.tensor_unit, budget)


def strength_coherent(ctx: OpticContext, T: SetFunctor) -> bool:
    """Copresheaf functoriality over optics, which packages the bimodule laws
    and the unit/associativity/naturality laws of the derived strength."""
    validate_functor(T)
    C = ctx.C
    i = C.unit
    for x in range(C.n_obj):
        for x2 in range(C.n_obj):
            if T.action[ctx.strength(i, x, x2)] != tuple(range(T.size(ctx.obj(x, x2)))):
                return False
            for m in range(C.n_obj):
                for m2 in range(C.n_obj):
                    once = T.action[ctx.strength(C.tensor(m2, m), x, x2)]
                    a = T.action[ctx.strength(m, x, x2)]
                    b = T.action[ctx.strength(m2, C.tensor(m, x), C.tensor(m, x2))]
                    if tuple(b[a[k]] for k in range(len(a))) != once:
                        return False
    return True


# ---------------------------------------------------------------------------
# oracles


def tensor_oracle(ctx: OpticContext, P: SetFunctor, Q: SetFunctor,
                  T: SetFunctor | None = None) -> tuple[list[dict[int, int]], SetFunctor]:
    """Certify that the Day tensor over optics is the quotient of the plain
    profunctor Day tensor by the strength-swap relations.

    The profunctor tensor of the underlying profunctors is quotiented by
    ``(m⊗a, b, h, ζ_m p, q) ∼ (a, m⊗b, h', p, ζ_m q)`` where ``h'`` slides
    ``m`` past ``a`` with ``σ``.  The canonical map ``[h, p, q] ↦ [h, p, q]``
    into the optic tensor must be constant on every class and a bijection
    at every object.  Returns the per-object bijections (quotient class →
    element of the optic tensor) and the optic tensor.  Raises
    :class:`IllDefinedMap` or ``ValueError`` on failure.
    """
    C = ctx.C
    n = C.n_obj
    Eo = ctx.E
    Ep = twisted_base(C)
    if T is None:
        T = day_tensor(Eo, P, Q)
    Pu, Qu = underlying(ctx, P), underlying(ctx, Q)
    D = day_tensor(Ep, Pu, Qu)
    maps = []
    for e in range(Ep.n_obj):
        q = D.presentation[e]
        uf = UnionFind(D.size(e))
        for m in range(n):
            for a in range(Ep.n_obj):
                a1, a2 = divmod(a, n)
                ma = ctx.obj(C.tensor(m, a1), C.tensor(m, a2))
                za = P.action[ctx.strength(m, a1, a2)]
                for b in range(Ep.n_obj):
                    b1, b2 = divmod(b, n)
                    mb = ctx.obj(C.tensor(m, b1), C.tensor(m, b2))
                    zb = Q.action[ctx.strength(m, b1, b2)]
                    u = C.tensor_m(C.symmetry[m][a1], C.ids[b1])
                    v = C.tensor_m(C.symmetry[a2][m], C.ids[b2])
                    for h in Ep.hom(Ep.tensor(ma, b), e):
                        h1, h2 = divmod(h, C.n_mor)
                        h2_ = C.comp[h2][v]
                        h1_ = C.comp[u][h1]
                        hp = h1_ * C.n_mor + h2_
                        for p in range(P.size(a)):
                            for qq in range(Q.size(b)):
                                lhs = q.klass((ma, b, h, za[p], qq))
                                rhs = q.klass((a, mb, hp, p, zb[qq]))
                                uf.union(lhs, rhs)
        image: dict[int, int] = {}
        for gen, k in zip(q.ambient, q.class_of):
            a, b, h, p, qq = gen
            u, v = divmod(h, C.n_mor)
            t = T.element(e, (a, b, ctx.pure(u, v), p, qq))
            root = uf.find(k)
            if image.setdefault(root, t) != t:
                raise IllDefinedMap("canonical map is not constant on a class",
                                    (Eo.objects[e], gen))
        if sorted(image.values()) != list(range(T.size(e))):
            raise ValueError(f"canonical map is not bijective at {Eo.objects[e]}: "
                             f"{len(image)} classes onto {T.size(e)} elements")
        maps.append(image)
    return maps, T


def two_hole_optics(C: FinCategory, a: tuple[int, int], b: tuple[int, int],
                    c: tuple[int, int]) -> QuotientSet:
    """``∫^{m,n} C(c, m⊗a) × C(m⊗a', n⊗b) × C(n⊗b', c')``."""
    a1, a2 = a
    b1, b2 = b
    c1, c2 = c
    N = C.n_obj
    ambient = [(m, n, f, k, g) for m in range(N) for n in range(N)
               for f in C.hom(c1, C.tensor(m, a1))
               for k in C.hom(C.tensor(m, a2), C.tensor(n, b1))
               for g in C.hom(C.tensor(n, b2), c2)]
    rel = []
    for j in range(C.n_mor):
        s, t = C.src[j], C.dst[j]
        for n in range(N):
            for f in C.hom(c1, C.tensor(s, a1)):
                for k in C.hom(C.tensor(t, a2), C.tensor(n, b1)):
                    for g in C.hom(C.tensor(n, b2), c2):
                        rel.append(((t, n, C.comp[C.tensor_m(j, C.ids[a1])][f], k, g),
                                    (s, n, f, C.comp[k][C.tensor_m(j, C.ids[a2])], g)))
        for m in range(N):
            for f in C.hom(c1, C.tensor(m, a1)):
                for k in C.hom(C.tensor(m, a2), C.tensor(s, b1)):
                    for g in C.hom(C.tensor(t, b2), c2):
                        rel.append(((m, t, f, C.comp[C.tensor_m(j, C.ids[b1])][k], g),
                                    (m, s, f, k, C.comp[g][C.tensor_m(j, C.ids[b2])])))
    return quotient(ambient, rel)
