"""Finite-set-valued functors and the limits/colimits the upper layers need.

A :class:`SetFunctor` stores one tuple of element labels per object and one
dense index array per morphism.  Functors produced by a quotient (coends,
Day convolution, pushouts) also keep their *presentation*: the generating
elements and the class each one lands in.  Maps out of such functors are
defined on generators and checked against every member of every class.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .finbase import DEFAULT_BUDGET, FinCategory, make_category


class BudgetExceeded(Exception):
    def __init__(self, bound: int, what: str = "enumeration"):
        super().__init__(f"{what} exceeded the budget of {bound} partial assignments")
        self.bound = bound


class IllDefinedMap(Exception):
    """A map given on representatives does not respect the quotient."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotNatural(Exception):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class MediatorNotFound(Exception):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# union-find and quotients


class UnionFind:
    """Disjoint sets over ``range(n)``; the root of a class is its minimum."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx < ry:
            self.parent[ry] = rx
        elif ry < rx:
            self.parent[rx] = ry


@dataclass(frozen=True)
class QuotientSet:
    """A finite set modulo an equivalence, with canonical representatives.

    ``ambient`` lists the elements in global index order; ``reps[k]`` is the
    minimal global index in class ``k`` and classes are sorted by it.
    """

    ambient: tuple[Hashable, ...]
    parent: tuple[int, ...]
    reps: tuple[int, ...]
    class_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.reps)

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {x: i for i, x in enumerate(self.ambient)}

    def klass(self, element: Hashable) -> int:
        return self.class_of[self.index[element]]

    def rep(self, k: int) -> Hashable:
        return self.ambient[self.reps[k]]

    def members(self, k: int) -> list[Hashable]:
        return [x for x, c in zip(self.ambient, self.class_of) if c == k]

    @cached_property
    def classes(self) -> tuple[tuple[Hashable, ...], ...]:
        out: list[list[Hashable]] = [[] for _ in self.reps]
        for x, c in zip(self.ambient, self.class_of):
            out[c].append(x)
        return tuple(tuple(o) for o in out)


def quotient(ambient: Sequence[Hashable],
             relations: Iterable[tuple[Hashable, Hashable]]) -> QuotientSet:
    """Single pass of unions over all generating pairs, then class extraction."""
    ambient = tuple(ambient)
    index = {x: i for i, x in enumerate(ambient)}
    uf = UnionFind(len(ambient))
    for x, y in relations:
        uf.union(index[x], index[y])
    roots = [uf.find(i) for i in range(len(ambient))]
    reps = sorted(set(roots))
    rank = {r: k for k, r in enumerate(reps)}
    return QuotientSet(ambient, tuple(roots), tuple(reps), tuple(rank[r] for r in roots))


# ---------------------------------------------------------------------------
# functors and natural transformations


@dataclass(frozen=True, eq=False)
class SetFunctor:
    """A functor from ``base`` to finite sets.

    ``carrier[e]`` is the tuple of element labels at object ``e``;
    ``action[m][i]`` is the index in ``carrier[dst m]`` of the image of
    element ``i`` of ``carrier[src m]``.  ``presentation`` (one
    :class:`QuotientSet` per object, or ``None``) does not take part in
    equality.
    """

    base: FinCategory
    carrier: tuple[tuple[Hashable, ...], ...]
    action: tuple[tuple[int, ...], ...]
    presentation: tuple[QuotientSet, ...] | None = field(default=None, compare=False)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, SetFunctor):
            return NotImplemented
        return (hash(self) == hash(other) and self.carrier == other.carrier
                and self.action == other.action and self.base == other.base)

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.carrier, self.action))

    def __repr__(self) -> str:
        return f"SetFunctor(sizes={self.sizes})"

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.carrier)

    def size(self, e: int) -> int:
        return len(self.carrier[e])

    @cached_property
    def _index(self) -> tuple[dict[Hashable, int], ...]:
        return tuple({x: i for i, x in enumerate(c)} for c in self.carrier)

    def index(self, e: int, label: Hashable) -> int:
        return self._index[e][label]

    def element(self, e: int, generator: Hashable) -> int:
        """Index of the element named by ``generator``: a label, or any member
        of a class when the functor carries a presentation."""
        if self.presentation is not None:
            return self.presentation[e].klass(generator)
        return self._index[e][generator]

    def act(self, m: int, i: int) -> int:
        return self.action[m][i]

    def label(self, e: int, i: int) -> Hashable:
        return self.carrier[e][i]

    def generators(self, e: int) -> Iterator[tuple[Hashable, int]]:
        """Pairs (generator, class index); plain labels if no presentation."""
        if self.presentation is None:
            yield from ((x, i) for i, x in enumerate(self.carrier[e]))
        else:
            q = self.presentation[e]
            yield from zip(q.ambient, q.class_of)

    def total(self) -> int:
        return sum(self.sizes)


@dataclass(frozen=True, eq=False)
class SetNat:
    src: SetFunctor
    dst: SetFunctor
    components: tuple[tuple[int, ...], ...]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, SetNat):
            return NotImplemented
        return (self.components == other.components and self.src == other.src
                and self.dst == other.dst)

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return f"SetNat({self.components})"

    def __call__(self, e: int, i: int) -> int:
        return self.components[e][i]

    def is_bijective(self) -> bool:
        return all(sorted(c) == list(range(self.dst.size(e)))
                   for e, c in enumerate(self.components))


def identity_nat(F: SetFunctor) -> SetNat:
    return SetNat(F, F, tuple(tuple(range(n)) for n in F.sizes))


def compose_nat(beta: SetNat, alpha: SetNat) -> SetNat:
    """``beta∘alpha``."""
    if alpha.dst != beta.src:
        raise ValueError("natural transformations are not composable")
    comps = tuple(tuple(b[x] for x in a)
                  for a, b in zip(alpha.components, beta.components))
    return SetNat(alpha.src, beta.dst, comps)


def inverse_nat(alpha: SetNat) -> SetNat:
    comps = []
    for e, c in enumerate(alpha.components):
        inv = [-1] * alpha.dst.size(e)
        for i, j in enumerate(c):
            inv[j] = i
        if -1 in inv or len(c) != len(inv):
            raise ValueError("natural transformation is not invertible")
        comps.append(tuple(inv))
    return SetNat(alpha.dst, alpha.src, tuple(comps))


def validate_functor(F: SetFunctor) -> bool:
    """Exhaustive functoriality check; raises :class:`NotNatural` on failure."""
    E = F.base
    for e in range(E.n_obj):
        if F.action[E.ids[e]] != tuple(range(F.size(e))):
            raise NotNatural("action does not preserve identities", (E.objects[e],))
    for f in range(E.n_mor):
        if len(F.action[f]) != F.size(E.src[f]):
            raise NotNatural("action has the wrong length", (E.mor_labels[f],))
        for g in E.out_mors[E.dst[f]]:
            gf = E.comp[g][f]
            ag, af = F.action[g], F.action[f]
            if tuple(ag[x] for x in af) != F.action[gf]:
                raise NotNatural("action does not preserve composition",
                                 (E.mor_labels[g], E.mor_labels[f]))
    return True


def is_natural(alpha: SetNat) -> bool:
    F, G = alpha.src, alpha.dst
    E = F.base
    for m in range(E.n_mor):
        a, b = E.src[m], E.dst[m]
        ca, cb = alpha.components[a], alpha.components[b]
        Fm, Gm = F.action[m], G.action[m]
        for x in range(F.size(a)):
            if cb[Fm[x]] != Gm[ca[x]]:
                return False
    return True


def check_natural(alpha: SetNat) -> SetNat:
    if not is_natural(alpha):
        raise NotNatural("family is not natural")
    return alpha


def nat_from_fn(src: SetFunctor, dst: SetFunctor,
                fn: Callable[[int, int], int], check: bool = True) -> SetNat:
    """Build a transformation from ``fn(object, element index)``."""
    comps = tuple(tuple(fn(e, i) for i in range(src.size(e)))
                  for e in range(src.base.n_obj))
    alpha = SetNat(src, dst, comps)
    return check_natural(alpha) if check else alpha


def nat_from_generators(src: SetFunctor, dst: SetFunctor,
                        fn: Callable[[int, Hashable], int],
                        check: bool = True) -> SetNat:
    """Define a map on the generators of a presented functor.

    With ``check`` every generator is evaluated and all members of a class
    must agree; otherwise only class representatives are used.
    """
    comps = []
    for e in range(src.base.n_obj):
        if src.presentation is None or not check:
            comp = [fn(e, src.presentation[e].rep(k) if src.presentation is not None
                       else src.carrier[e][k]) for k in range(src.size(e))]
        else:
            comp = [-1] * src.size(e)
            for gen, k in src.generators(e):
                v = fn(e, gen)
                if comp[k] == -1:
                    comp[k] = v
                elif comp[k] != v:
                    raise IllDefinedMap(
                        "map disagrees on two members of one class",
                        (src.base.objects[e], gen, src.presentation[e].rep(k)))
        comps.append(tuple(comp))
    alpha = SetNat(src, dst, tuple(comps))
    return check_natural(alpha) if check else alpha


# ---------------------------------------------------------------------------
# enumeration of natural transformations


def iter_nats(F: SetFunctor, G: SetFunctor, budget: int = DEFAULT_BUDGET,
              injective: bool = False) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield the component tables of every natural ``F ⇒ G``.

    Unassigned elements are visited in (object, element) index order and
    candidate values in index order.  Each choice is propagated along every
    morphism out of its object; a clash prunes the branch.  ``budget`` bounds
    the number of visited partial assignments.
    """
    E = F.base
    n_obj = E.n_obj
    if F.base != G.base:
        raise ValueError("functors live on different categories")
    order = [(e, x) for e in range(n_obj) for x in range(F.size(e))]
    if injective and any(F.size(e) > G.size(e) for e in range(n_obj)):
        return
    if any(F.size(e) and not G.size(e) for e in range(n_obj)):
        return
    # forced[(e, x)] -> list of (m, e', F(m)x)
    outs = []
    for e in range(n_obj):
        row = []
        for x in range(F.size(e)):
            row.append([(m, E.dst[m], F.action[m][x]) for m in E.out_mors[e]])
        outs.append(row)
    assign: list[list[int]] = [[-1] * F.size(e) for e in range(n_obj)]
    used: list[list[int]] = [[-1] * G.size(e) for e in range(n_obj)]
    counter = [0]

    def propagate(e: int, x: int, y: int, trail: list) -> bool:
        stack = [(e, x, y)]
        while stack:
            e, x, y = stack.pop()
            cur = assign[e][x]
            if cur != -1:
                if cur != y:
                    return False
                continue
            if injective:
                if used[e][y] != -1:
                    return False
                used[e][y] = x
            assign[e][x] = y
            trail.append((e, x, y))
            for m, e2, x2 in outs[e][x]:
                stack.append((e2, x2, G.action[m][y]))
        return True

    def undo(trail: list) -> None:
        for e, x, y in trail:
            assign[e][x] = -1
            if injective:
                used[e][y] = -1

    def search(pos: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        while pos < len(order) and assign[order[pos][0]][order[pos][1]] != -1:
            pos += 1
        if pos == len(order):
            yield tuple(tuple(row) for row in assign)
            return
        e, x = order[pos]
        for y in range(G.size(e)):
            counter[0] += 1
            if counter[0] > budget:
                raise BudgetExceeded(budget, "nat_set")
            trail: list = []
            if propagate(e, x, y, trail):
                yield from search(pos + 1)
            undo(trail)

    yield from search(0)


def nat_set(F: SetFunctor, G: SetFunctor, budget: int = DEFAULT_BUDGET) -> list[SetNat]:
    return [SetNat(F, G, c) for c in iter_nats(F, G, budget)]


def count_nats(F: SetFunctor, G: SetFunctor, budget: int = DEFAULT_BUDGET) -> int:
    return sum(1 for _ in iter_nats(F, G, budget))


def find_iso(F: SetFunctor, G: SetFunctor,
             budget: int = DEFAULT_BUDGET) -> tuple[SetNat, SetNat] | None:
    """Search for a natural bijection; returns ``(forward, inverse)`` or None."""
    if F.sizes != G.sizes:
        return None
    for comps in iter_nats(F, G, budget, injective=True):
        fwd = SetNat(F, G, comps)
        bwd = inverse_nat(fwd)
        if not is_natural(bwd):  # pragma: no cover - inverse of a natural bijection
            continue
        return fwd, bwd
    return None


# ---------------------------------------------------------------------------
# basic functors


def terminal_functor(E: FinCategory) -> SetFunctor:
    return SetFunctor(E, tuple(((),) for _ in range(E.n_obj)),
                      tuple((0,) for _ in range(E.n_mor)))


def empty_functor(E: FinCategory) -> SetFunctor:
    return SetFunctor(E, tuple(() for _ in range(E.n_obj)),
                      tuple(() for _ in range(E.n_mor)))


def constant_functor(E: FinCategory, labels: Sequence[Hashable]) -> SetFunctor:
    labels = tuple(labels)
    return SetFunctor(E, tuple(labels for _ in range(E.n_obj)),
                      tuple(tuple(range(len(labels))) for _ in range(E.n_mor)))


def yoneda(E: FinCategory, e: int) -> SetFunctor:
    """The copresheaf ``E(e, -)``; elements are labelled by morphism index."""
    carrier = tuple(E.hom(e, d) for d in range(E.n_obj))
    index = [{f: i for i, f in enumerate(c)} for c in carrier]
    action = []
    for m in range(E.n_mor):
        a, b = E.src[m], E.dst[m]
        action.append(tuple(index[b][E.comp[m][f]] for f in carrier[a]))
    return SetFunctor(E, carrier, tuple(action))


def yoneda_map(e: int, F: SetFunctor, x: int) -> SetNat:
    """The transformation ``E(e,-) ⇒ F`` sending ``id_e`` to element ``x``."""
    Y = yoneda(F.base, e)
    return nat_from_fn(Y, F, lambda d, i: F.action[Y.carrier[d][i]][x])


def yoneda_element(alpha: SetNat, e: int) -> int:
    Y = alpha.src
    return alpha.components[e][Y.index(e, Y.base.ids[e])]


def restrict(F: SetFunctor, E2: FinCategory, obj_map: Sequence[int],
             mor_map: Sequence[int]) -> SetFunctor:
    """Precompose with a functor ``E2 → F.base`` given on indices."""
    carrier = tuple(F.carrier[obj_map[d]] for d in range(E2.n_obj))
    action = tuple(F.action[mor_map[m]] for m in range(E2.n_mor))
    return SetFunctor(E2, carrier, action)


# ---------------------------------------------------------------------------
# limits and colimits


@dataclass(frozen=True)
class Pullback:
    obj: SetFunctor
    p1: SetNat
    p2: SetNat
    f: SetNat
    g: SetNat

    def mediate(self, h1: SetNat, h2: SetNat, check_unique: bool = False,
                budget: int = DEFAULT_BUDGET) -> SetNat:
        """The unique map ``k`` with ``p1∘k = h1`` and ``p2∘k = h2``.

        Raises :class:`MediatorNotFound` when the cone does not commute.
        ``check_unique`` additionally verifies that the projections are
        jointly injective, which makes the mediator unique.
        """
        W = h1.src
        if h2.src != W:
            raise MediatorNotFound("cone legs have different sources")
        comps = []
        for e in range(W.base.n_obj):
            row = []
            for w in range(W.size(e)):
                x, y = h1.components[e][w], h2.components[e][w]
                if self.f.components[e][x] != self.g.components[e][y]:
                    raise MediatorNotFound("cone does not commute",
                                           (W.base.objects[e], w, x, y))
                row.append(self.obj.index(e, (x, y)))
            comps.append(tuple(row))
        k = check_natural(SetNat(W, self.obj, tuple(comps)))
        if check_unique:
            # two mediators agree after both projections, so they coincide
            # exactly when the projections are jointly injective pointwise
            for e in range(self.obj.base.n_obj):
                seen = set()
                for w in range(self.obj.size(e)):
                    key = (self.p1.components[e][w], self.p2.components[e][w])
                    if key in seen:
                        raise MediatorNotFound("projections are not jointly injective",
                                               (self.obj.base.objects[e], key))
                    seen.add(key)
        return k


def pullback(f: SetNat, g: SetNat) -> Pullback:
    """Pointwise pullback of ``f: F → H`` and ``g: G → H``."""
    if f.dst != g.dst:
        raise ValueError("pullback needs a common codomain")
    F, G = f.src, g.src
    E = F.base
    carrier = []
    for e in range(E.n_obj):
        fe, ge = f.components[e], g.components[e]
        carrier.append(tuple((x, y) for x in range(F.size(e)) for y in range(G.size(e))
                             if fe[x] == ge[y]))
    index = [{p: i for i, p in enumerate(c)} for c in carrier]
    action = []
    for m in range(E.n_mor):
        a, b = E.src[m], E.dst[m]
        Fm, Gm = F.action[m], G.action[m]
        action.append(tuple(index[b][(Fm[x], Gm[y])] for x, y in carrier[a]))
    P = SetFunctor(E, tuple(carrier), tuple(action))
    p1 = SetNat(P, F, tuple(tuple(x for x, _ in c) for c in carrier))
    p2 = SetNat(P, G, tuple(tuple(y for _, y in c) for c in carrier))
    return Pullback(P, p1, p2, f, g)


@dataclass(frozen=True)
class Pushout:
    obj: SetFunctor
    i1: SetNat
    i2: SetNat
    f: SetNat
    g: SetNat

    def copair(self, h1: SetNat, h2: SetNat) -> SetNat:
        """The unique ``k`` with ``k∘i1 = h1`` and ``k∘i2 = h2``."""
        Z = h1.dst
        comps = []
        for e in range(self.obj.base.n_obj):
            row = [-1] * self.obj.size(e)
            for gen, k in self.obj.generators(e):
                tag, idx = gen
                v = (h1 if tag == 0 else h2).components[e][idx]
                if row[k] == -1:
                    row[k] = v
                elif row[k] != v:
                    raise MediatorNotFound("cocone does not commute",
                                           (self.obj.base.objects[e], gen))
            comps.append(tuple(row))
        return check_natural(SetNat(self.obj, Z, tuple(comps)))


def pushout(f: SetNat, g: SetNat) -> Pushout:
    """Pointwise pushout of ``f: H → F`` and ``g: H → G`` by union-find."""
    if f.src != g.src:
        raise ValueError("pushout needs a common domain")
    H, F, G = f.src, f.dst, g.dst
    E = H.base
    quots = []
    for e in range(E.n_obj):
        amb = [(0, i) for i in range(F.size(e))] + [(1, j) for j in range(G.size(e))]
        rel = [((0, f.components[e][h]), (1, g.components[e][h])) for h in range(H.size(e))]
        quots.append(quotient(amb, rel))
    carrier = tuple(tuple(q.rep(k) for k in range(len(q))) for q in quots)
    action = []
    for m in range(E.n_mor):
        a, b = E.src[m], E.dst[m]
        qa, qb = quots[a], quots[b]
        row = []
        for tag, idx in carrier[a]:
            img = (F if tag == 0 else G).action[m][idx]
            row.append(qb.klass((tag, img)))
        action.append(tuple(row))
    P = SetFunctor(E, carrier, tuple(action), tuple(quots))
    i1 = SetNat(F, P, tuple(tuple(q.klass((0, i)) for i in range(F.size(e)))
                            for e, q in enumerate(quots)))
    i2 = SetNat(G, P, tuple(tuple(q.klass((1, j)) for j in range(G.size(e)))
                            for e, q in enumerate(quots)))
    return Pushout(P, i1, i2, f, g)


def product(F: SetFunctor, G: SetFunctor) -> tuple[SetFunctor, SetNat, SetNat]:
    E = F.base
    carrier = tuple(tuple(itertools.product(range(F.size(e)), range(G.size(e))))
                    for e in range(E.n_obj))
    action = []
    for m in range(E.n_mor):
        b = E.dst[m]
        nG = G.size(b)
        Fm, Gm = F.action[m], G.action[m]
        action.append(tuple(Fm[x] * nG + Gm[y] for x, y in carrier[E.src[m]]))
    P = SetFunctor(E, carrier, tuple(action))
    p1 = SetNat(P, F, tuple(tuple(x for x, _ in c) for c in carrier))
    p2 = SetNat(P, G, tuple(tuple(y for _, y in c) for c in carrier))
    return P, p1, p2


def pair(P: SetFunctor, h1: SetNat, h2: SetNat) -> SetNat:
    """Map into a product built by :func:`product`."""
    return SetNat(h1.src, P, tuple(
        tuple(P.index(e, (x, y)) for x, y in zip(c1, c2))
        for e, (c1, c2) in enumerate(zip(h1.components, h2.components))))


def coproduct(F: SetFunctor, G: SetFunctor) -> tuple[SetFunctor, SetNat, SetNat]:
    E = F.base
    carrier = tuple(tuple((0, i) for i in range(F.size(e))) +
                    tuple((1, j) for j in range(G.size(e))) for e in range(E.n_obj))
    action = []
    for m in range(E.n_mor):
        nF = F.size(E.dst[m])
        action.append(tuple(F.action[m]) + tuple(nF + y for y in G.action[m]))
    S = SetFunctor(E, carrier, tuple(action))
    i1 = SetNat(F, S, tuple(tuple(range(F.size(e))) for e in range(E.n_obj)))
    i2 = SetNat(G, S, tuple(tuple(F.size(e) + j for j in range(G.size(e)))
                            for e in range(E.n_obj)))
    return S, i1, i2


def copair(S: SetFunctor, h1: SetNat, h2: SetNat) -> SetNat:
    """Map out of a coproduct built by :func:`coproduct`."""
    comps = tuple(c1 + c2 for c1, c2 in zip(h1.components, h2.components))
    return SetNat(S, h1.dst, comps)


# ---------------------------------------------------------------------------
# product and opposite categories, coends and ends


def opposite(E: FinCategory) -> FinCategory:
    n = E.n_mor
    comp = tuple(tuple(E.comp[f][g] for f in range(n)) for g in range(n))
    sym = None
    if E.symmetry is not None:
        sym = tuple(tuple(E.symmetry[b][a] for b in range(E.n_obj))
                    for a in range(E.n_obj))
    return FinCategory(E.objects, E.mor_labels, E.dst, E.src, comp, E.ids,
                       E.tensor_obj, E.tensor_mor, E.unit, sym, f"{E.name}^op")


def product_category(A: FinCategory, B: FinCategory) -> FinCategory:
    """``A × B`` with objects ``a*|B|+b`` and morphisms ``f*|mor B|+g``.

    The monoidal structure is componentwise when both factors carry one.
    """
    nb, mb = B.n_obj, B.n_mor
    objects = [f"({x},{y})" for x in A.objects for y in B.objects]
    morphisms = [(f"({A.mor_labels[f]},{B.mor_labels[g]})",
                  A.src[f] * nb + B.src[g], A.dst[f] * nb + B.dst[g])
                 for f in range(A.n_mor) for g in range(mb)]
    comp = {}
    for f1, g1, f2, g2 in itertools.product(range(A.n_mor), range(mb),
                                            range(A.n_mor), range(mb)):
        a, b = A.comp[f2][f1], B.comp[g2][g1]
        if a >= 0 and b >= 0:
            comp[f2 * mb + g2, f1 * mb + g1] = a * mb + b
    ids = [A.ids[x] * mb + B.ids[y] for x in range(A.n_obj) for y in range(nb)]
    if not (A.is_monoidal and B.is_monoidal):
        return make_category(objects, morphisms, comp, ids,
                             name=f"{A.name}x{B.name}")
    tobj = [[A.tensor_obj[x1][x2] * nb + B.tensor_obj[y1][y2]
             for x2 in range(A.n_obj) for y2 in range(nb)]
            for x1 in range(A.n_obj) for y1 in range(nb)]
    tmor = {}
    for f1, g1, f2, g2 in itertools.product(range(A.n_mor), range(mb),
                                            range(A.n_mor), range(mb)):
        tmor[f1 * mb + g1, f2 * mb + g2] = (A.tensor_mor[f1][f2] * mb
                                            + B.tensor_mor[g1][g2])
    sym = [[A.symmetry[x1][x2] * mb + B.symmetry[y1][y2]
            for x2 in range(A.n_obj) for y2 in range(nb)]
           for x1 in range(A.n_obj) for y1 in range(nb)]
    return make_category(objects, morphisms, comp, ids, tobj, tmor,
                         A.unit * nb + B.unit, sym, name=f"{A.name}x{B.name}")


def twisted_base(E: FinCategory) -> FinCategory:
    """``E^op × E``: the base of the bifunctors :func:`coend` and :func:`end` take."""
    return product_category(opposite(E), E)


def coend(T: SetFunctor, E: FinCategory) -> QuotientSet:
    """``∫^c T(c,c)`` for ``T`` on ``E^op × E``.

    Generators are pairs ``(c, x)`` with ``x ∈ T(c,c)``, globally ordered
    lexicographically.  For every ``f: c → c'`` and ``x ∈ T(c',c)``,
    ``T(f,c)(x) ∼ T(c',f)(x)``.
    """
    n, mb = E.n_obj, E.n_mor
    ambient = [(c, x) for c in range(n) for x in range(T.size(c * n + c))]
    relations = []
    for f in range(mb):
        c, c2 = E.src[f], E.dst[f]
        # (f^op, id_c): (c2, c) -> (c, c);  (id_c2, f): (c2, c) -> (c2, c2)
        left = T.action[f * mb + E.ids[c]]
        right = T.action[E.ids[c2] * mb + f]
        for x in range(T.size(c2 * n + c)):
            relations.append(((c, left[x]), (c2, right[x])))
    return quotient(ambient, relations)


def end(T: SetFunctor, E: FinCategory, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """``∫_c T(c,c)``: families ``(x_c)`` with ``T(c,f)(x_c) = T(f,c')(x_c')``."""
    n, mb = E.n_obj, E.n_mor
    checks: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for f in range(mb):
        c, c2 = E.src[f], E.dst[f]
        # (id_c, f): (c,c) -> (c,c2);  (f^op, id_c2): (c2,c2) -> (c,c2)
        checks[max(c, c2)].append((f, c, c2))
    out: list[tuple[int, ...]] = []
    fam = [-1] * n
    counter = [0]

    def rec(c: int) -> None:
        if c == n:
            out.append(tuple(fam))
            return
        for x in range(T.size(c * n + c)):
            counter[0] += 1
            if counter[0] > budget:
                raise BudgetExceeded(budget, "end")
            fam[c] = x
            ok = True
            for f, a, b in checks[c]:
                lhs = T.action[E.ids[a] * mb + f][fam[a]]
                rhs = T.action[f * mb + E.ids[b]][fam[b]]
                if lhs != rhs:
                    ok = False
                    break
            if ok:
                rec(c + 1)
        fam[c] = -1

    rec(0)
    return out


def hom_bifunctor(E: FinCategory) -> SetFunctor:
    """``E(-,-)`` on ``E^op × E`` with pre- and post-composition."""
    B = twisted_base(E)
    n, mb = E.n_obj, E.n_mor
    carrier = tuple(E.hom(x, y) for x in range(n) for y in range(n))
    index = [{f: i for i, f in enumerate(c)} for c in carrier]
    action = []
    for u in range(mb):
        for v in range(mb):
            # (u^op, v): (x, y) -> (x', y') with u: x' -> x, v: y -> y'
            x, y = E.dst[u], E.src[v]
            x2, y2 = E.src[u], E.dst[v]
            action.append(tuple(index[x2 * n + y2][E.comp[E.comp[v][f]][u]]
                                for f in carrier[x * n + y]))
    return SetFunctor(B, carrier, tuple(action))
