"""Finite strict symmetric monoidal categories given by explicit tables.

Objects and morphisms are contiguous integer indices; labels live in a side
table.  Every ordering used downstream is index order, so constructions built
on top of a :class:`FinCategory` are reproducible bit for bit.
"""
from __future__ import annotations

import copy
import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Iterator, Mapping, Sequence

import jsonschema

DEFAULT_BUDGET = 1_000_000


class CategoryError(Exception):
    """Base class for problems with a finite category or its instance file."""


class ValidationError(CategoryError):
    """A category axiom fails; ``witness`` names the offending tuple."""

    axiom = "validation"

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class AssocViolation(ValidationError):
    axiom = "associativity"


class IdentityViolation(ValidationError):
    axiom = "identity"


class InterchangeViolation(ValidationError):
    axiom = "interchange"


class SymmetryViolation(ValidationError):
    axiom = "symmetry"


class StrictnessViolation(ValidationError):
    axiom = "strictness"


class NotComposable(CategoryError):
    pass


class SchemaError(CategoryError):
    pass


Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class FinCategory:
    """A finite category, optionally strict symmetric monoidal.

    ``comp[g][f]`` is the index of ``g∘f`` or -1 when ``dst(f) != src(g)``.
    The monoidal tables (``tensor_obj``, ``tensor_mor``, ``unit``,
    ``symmetry``) are either all present or all ``None``.
    """

    objects: tuple[str, ...]
    mor_labels: tuple[str, ...]
    src: tuple[int, ...]
    dst: tuple[int, ...]
    comp: Table
    ids: tuple[int, ...]
    tensor_obj: Table | None = None
    tensor_mor: Table | None = None
    unit: int | None = None
    symmetry: Table | None = None
    name: str = ""

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _key(self) -> tuple:
        return (self.objects, self.mor_labels, self.src, self.dst, self.comp,
                self.ids, self.tensor_obj, self.tensor_mor, self.unit, self.symmetry)

    @cached_property
    def _hash(self) -> int:
        return hash(self._key)

    # -- shape -----------------------------------------------------------

    @property
    def n_obj(self) -> int:
        return len(self.objects)

    @property
    def n_mor(self) -> int:
        return len(self.mor_labels)

    @property
    def is_monoidal(self) -> bool:
        return self.tensor_obj is not None

    @cached_property
    def homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        table: dict[tuple[int, int], list[int]] = {
            (a, b): [] for a in range(self.n_obj) for b in range(self.n_obj)
        }
        for m in range(self.n_mor):
            table[self.src[m], self.dst[m]].append(m)
        return {k: tuple(v) for k, v in table.items()}

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        return self.homs[a, b]

    @cached_property
    def out_mors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n_obj)]
        for m in range(self.n_mor):
            out[self.src[m]].append(m)
        return tuple(tuple(o) for o in out)

    @cached_property
    def obj_index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.objects)}

    @cached_property
    def mor_index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.mor_labels)}

    def identity(self, a: int) -> int:
        return self.ids[a]

    # -- operations --------------------------------------------------------

    def compose(self, g: int, f: int) -> int:
        """``g∘f``; raises :class:`NotComposable` unless ``dst(f) == src(g)``."""
        h = self.comp[g][f]
        if h < 0:
            raise NotComposable(
                f"cannot compose {self.mor_labels[g]} after {self.mor_labels[f]}")
        return h

    def compose_path(self, *mors: int) -> int:
        """Compose right to left: ``compose_path(h, g, f) == h∘g∘f``."""
        result = mors[-1]
        for m in reversed(mors[:-1]):
            result = self.compose(m, result)
        return result

    def tensor(self, a: int, b: int) -> int:
        return self.tensor_obj[a][b]

    def tensor_m(self, f: int, g: int) -> int:
        return self.tensor_mor[f][g]

    def sym(self, a: int, b: int) -> int:
        return self.symmetry[a][b]

    def describe(self) -> dict[str, int]:
        return {"objects": self.n_obj, "morphisms": self.n_mor}


def compose(C: FinCategory, f: int, g: int) -> int:
    """Composite ``f∘g`` (``g`` first); requires ``dst(g) == src(f)``."""
    return C.compose(f, g)


def tensor_mor(C: FinCategory, f: int, g: int) -> int:
    return C.tensor_m(f, g)


def make_category(
    objects: Sequence[str],
    morphisms: Sequence[tuple[str, int, int]],
    comp: Mapping[tuple[int, int], int],
    ids: Sequence[int],
    tensor_obj: Sequence[Sequence[int]] | None = None,
    tensor_mor: Mapping[tuple[int, int], int] | None = None,
    unit: int | None = None,
    symmetry: Sequence[Sequence[int]] | None = None,
    name: str = "",
) -> FinCategory:
    """Assemble dense tables from sparse data.

    Missing composition or tensor entries become -1; the validator reports
    them instead of this constructor.
    """
    n_mor = len(morphisms)
    table = [[-1] * n_mor for _ in range(n_mor)]
    for (g, f), h in comp.items():
        table[g][f] = h
    tm = None
    if tensor_mor is not None:
        dense = [[-1] * n_mor for _ in range(n_mor)]
        for (f, g), h in tensor_mor.items():
            dense[f][g] = h
        tm = tuple(tuple(r) for r in dense)
    return FinCategory(
        objects=tuple(objects),
        mor_labels=tuple(m[0] for m in morphisms),
        src=tuple(m[1] for m in morphisms),
        dst=tuple(m[2] for m in morphisms),
        comp=tuple(tuple(r) for r in table),
        ids=tuple(ids),
        tensor_obj=None if tensor_obj is None else tuple(tuple(r) for r in tensor_obj),
        tensor_mor=tm,
        unit=unit,
        symmetry=None if symmetry is None else tuple(tuple(r) for r in symmetry),
        name=name,
    )


# ---------------------------------------------------------------------------
# validation


def _composable_pairs(C: FinCategory) -> Iterator[tuple[int, int]]:
    for f in range(C.n_mor):
        for g in C.out_mors[C.dst[f]]:
            yield g, f


def _check_tables(C: FinCategory) -> None:
    for a, i in enumerate(C.ids):
        if not (0 <= i < C.n_mor) or C.src[i] != a or C.dst[i] != a:
            raise IdentityViolation(
                f"identity of {C.objects[a]} is not an endomorphism of it", (a, i))
    for g, f in _composable_pairs(C):
        h = C.comp[g][f]
        if h < 0:
            raise AssocViolation(
                f"composition table missing {C.mor_labels[g]}∘{C.mor_labels[f]}", (g, f))
        if C.src[h] != C.src[f] or C.dst[h] != C.dst[g]:
            raise AssocViolation(
                f"{C.mor_labels[g]}∘{C.mor_labels[f]} has the wrong type", (g, f, h))


def _check_category(C: FinCategory) -> None:
    _check_tables(C)
    for f in range(C.n_mor):
        if C.comp[C.ids[C.dst[f]]][f] != f or C.comp[f][C.ids[C.src[f]]] != f:
            raise IdentityViolation(
                f"identity law fails at {C.mor_labels[f]}", (C.mor_labels[f],))
    for g, f in _composable_pairs(C):
        gf = C.comp[g][f]
        for h in C.out_mors[C.dst[g]]:
            if C.comp[h][gf] != C.comp[C.comp[h][g]][f]:
                raise AssocViolation(
                    "composition is not associative",
                    (C.mor_labels[h], C.mor_labels[g], C.mor_labels[f]))


def _check_monoidal(C: FinCategory) -> None:
    n, m, i = C.n_obj, C.n_mor, C.unit
    T, TM = C.tensor_obj, C.tensor_mor
    if i is None or not (0 <= i < n):
        raise StrictnessViolation("unit object missing")
    for a, b in itertools.product(range(n), repeat=2):
        if not (0 <= T[a][b] < n):
            raise StrictnessViolation("tensor_obj table incomplete", (a, b))
    for a in range(n):
        if T[i][a] != a or T[a][i] != a:
            raise StrictnessViolation(
                f"unit is not strict at {C.objects[a]}", (C.objects[a],))
    for a, b, c in itertools.product(range(n), repeat=3):
        if T[T[a][b]][c] != T[a][T[b][c]]:
            raise StrictnessViolation(
                "tensor of objects is not strictly associative",
                (C.objects[a], C.objects[b], C.objects[c]))
    for f, g in itertools.product(range(m), repeat=2):
        h = TM[f][g]
        if not (0 <= h < m) or C.src[h] != T[C.src[f]][C.src[g]] \
                or C.dst[h] != T[C.dst[f]][C.dst[g]]:
            raise InterchangeViolation(
                "tensor of morphisms has the wrong type",
                (C.mor_labels[f], C.mor_labels[g]))
    for a, b in itertools.product(range(n), repeat=2):
        if TM[C.ids[a]][C.ids[b]] != C.ids[T[a][b]]:
            raise InterchangeViolation(
                "tensor does not preserve identities", (C.objects[a], C.objects[b]))
    for g, f in _composable_pairs(C):
        for k, h in _composable_pairs(C):
            lhs = TM[C.comp[g][f]][C.comp[k][h]]
            rhs = C.comp[TM[g][k]][TM[f][h]]
            if lhs != rhs:
                raise InterchangeViolation(
                    "interchange law fails",
                    tuple(C.mor_labels[x] for x in (g, f, k, h)))
    ii = C.ids[i]
    for f in range(m):
        if TM[ii][f] != f or TM[f][ii] != f:
            raise StrictnessViolation(
                f"unit is not strict on morphism {C.mor_labels[f]}", (C.mor_labels[f],))
    for f, g, h in itertools.product(range(m), repeat=3):
        if TM[TM[f][g]][h] != TM[f][TM[g][h]]:
            raise StrictnessViolation(
                "tensor of morphisms is not strictly associative",
                tuple(C.mor_labels[x] for x in (f, g, h)))


def _check_symmetry(C: FinCategory) -> None:
    n, T, S = C.n_obj, C.tensor_obj, C.symmetry
    for a, b in itertools.product(range(n), repeat=2):
        s = S[a][b]
        if not (0 <= s < C.n_mor) or C.src[s] != T[a][b] or C.dst[s] != T[b][a]:
            raise SymmetryViolation("symmetry has the wrong type",
                                    (C.objects[a], C.objects[b]))
    for a, b in itertools.product(range(n), repeat=2):
        if C.comp[S[b][a]][S[a][b]] != C.ids[T[a][b]]:
            raise SymmetryViolation("symmetry is not involutive",
                                    (C.objects[a], C.objects[b]))
    for a in range(n):
        if S[C.unit][a] != C.ids[a]:
            raise SymmetryViolation("symmetry with the unit is not the identity",
                                    (C.objects[a],))
    for f, g in itertools.product(range(C.n_mor), repeat=2):
        lhs = C.comp[S[C.dst[f]][C.dst[g]]][C.tensor_mor[f][g]]
        rhs = C.comp[C.tensor_mor[g][f]][S[C.src[f]][C.src[g]]]
        if lhs != rhs:
            raise SymmetryViolation("symmetry is not natural",
                                    (C.mor_labels[f], C.mor_labels[g]))
    for a, b, c in itertools.product(range(n), repeat=3):
        # σ_{a,b⊗c} = (1_b⊗σ_{a,c})∘(σ_{a,b}⊗1_c)
        rhs = C.comp[C.tensor_mor[C.ids[b]][S[a][c]]][C.tensor_mor[S[a][b]][C.ids[c]]]
        if S[a][T[b][c]] != rhs:
            raise SymmetryViolation("hexagon fails",
                                    (C.objects[a], C.objects[b], C.objects[c]))


def validate_category(C: FinCategory) -> bool:
    """Exhaustively check every axiom; raise the first violation found.

    Category axioms are checked before monoidal ones, identities before
    associativity, so a mislabelled identity surfaces as an
    :class:`IdentityViolation`.
    """
    _check_category(C)
    if C.is_monoidal:
        _check_monoidal(C)
        if C.symmetry is None:
            raise SymmetryViolation("monoidal category without symmetry")
        _check_symmetry(C)
    return True


# ---------------------------------------------------------------------------
# instance documents

INSTANCE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "required": ["objects", "homs", "comp", "ids", "tensor_obj", "tensor_mor",
                 "unit", "symmetry"],
    "properties": {
        "name": {"type": "string"},
        "objects": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "homs": {"type": "object",
                 "additionalProperties": {"type": "array", "items": {"type": "string"}}},
        "comp": {"type": "array",
                 "items": {"type": "array", "items": {"type": "string"},
                           "minItems": 3, "maxItems": 3}},
        "ids": {"type": "object", "additionalProperties": {"type": "string"}},
        "tensor_obj": {"type": "object", "additionalProperties": {"type": "string"}},
        "tensor_mor": {"type": "object", "additionalProperties": {"type": "string"}},
        "unit": {"type": "string"},
        "symmetry": {"type": "object", "additionalProperties": {"type": "string"}},
        "budgets": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"max_nat_candidates": {"type": "integer", "minimum": 1}},
        },
        "engine": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["stprof", "set"]},
                "bottom": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["elements", "mult", "unit"],
                    "properties": {
                        "elements": {"type": "array", "items": {"type": "string"},
                                     "minItems": 1},
                        "mult": {"type": "array",
                                 "items": {"type": "array", "items": {"type": "string"}}},
                        "unit": {"type": "string"},
                    },
                },
            },
        },
    },
}


@dataclass(frozen=True)
class InstanceSpec:
    """A parsed instance document: the category plus engine parameters."""

    category: FinCategory
    max_nat_candidates: int = DEFAULT_BUDGET
    engine: dict = field(default_factory=lambda: {"kind": "stprof"})
    name: str = ""


def _split_pair(key: str, what: str) -> tuple[str, str]:
    parts = key.split(",")
    if len(parts) != 2:
        raise SchemaError(f"{what} key {key!r} is not of the form 'x,y'")
    return parts[0], parts[1]


def parse_instance(doc: Mapping[str, Any]) -> InstanceSpec:
    """Check ``doc`` against the schema and build the category (unvalidated)."""
    try:
        jsonschema.validate(doc, INSTANCE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(exc.message) from None

    objects = list(doc["objects"])
    if len(set(objects)) != len(objects):
        raise SchemaError("duplicate object labels")
    if any("," in o for o in objects):
        raise SchemaError("object labels may not contain ','")
    oidx = {o: i for i, o in enumerate(objects)}

    def obj(label: str) -> int:
        if label not in oidx:
            raise SchemaError(f"undeclared object {label!r}")
        return oidx[label]

    morphisms: list[tuple[str, int, int]] = []
    for key in sorted(doc["homs"], key=lambda k: tuple(obj(x) for x in _split_pair(k, "homs"))):
        a, b = _split_pair(key, "homs")
        for label in doc["homs"][key]:
            morphisms.append((label, obj(a), obj(b)))
    labels = [m[0] for m in morphisms]
    if len(set(labels)) != len(labels):
        raise SchemaError("morphism labels must be globally unique")
    if any("," in m for m in labels):
        raise SchemaError("morphism labels may not contain ','")
    midx = {m: i for i, m in enumerate(labels)}

    def mor(label: str) -> int:
        if label not in midx:
            raise SchemaError(f"undeclared morphism {label!r}")
        return midx[label]

    comp = {}
    for g, f, h in doc["comp"]:
        comp[mor(g), mor(f)] = mor(h)
    ids = [-1] * len(objects)
    for o, m in doc["ids"].items():
        ids[obj(o)] = mor(m)
    if -1 in ids:
        raise SchemaError("ids table incomplete")

    n = len(objects)
    tensor_obj = [[-1] * n for _ in range(n)]
    for key, c in doc["tensor_obj"].items():
        a, b = _split_pair(key, "tensor_obj")
        tensor_obj[obj(a)][obj(b)] = obj(c)
    tmor = {}
    for key, h in doc["tensor_mor"].items():
        f, g = _split_pair(key, "tensor_mor")
        tmor[mor(f), mor(g)] = mor(h)
    sym = [[-1] * n for _ in range(n)]
    for key, s in doc["symmetry"].items():
        a, b = _split_pair(key, "symmetry")
        sym[obj(a)][obj(b)] = mor(s)

    engine = copy.deepcopy(doc.get("engine", {"kind": "stprof"}))
    bottom = engine.get("bottom")
    if bottom is not None:
        elems = bottom["elements"]
        if bottom["unit"] not in elems:
            raise SchemaError("bottom unit is not a declared element")
        if len(bottom["mult"]) != len(elems) or any(
                len(row) != len(elems) or any(x not in elems for x in row)
                for row in bottom["mult"]):
            raise SchemaError("bottom multiplication table malformed")

    C = make_category(objects, morphisms, comp, ids, tensor_obj, tmor,
                      obj(doc["unit"]), sym, name=doc.get("name", ""))
    budget = doc.get("budgets", {}).get("max_nat_candidates", DEFAULT_BUDGET)
    return InstanceSpec(C, budget, engine, doc.get("name", ""))


def load_instance(doc: Mapping[str, Any] | str | Path) -> FinCategory:
    """Parse and validate an instance; accepts a dict, a path, or a builtin name."""
    return load_instance_spec(doc).category


def load_instance_spec(doc: Mapping[str, Any] | str | Path) -> InstanceSpec:
    if isinstance(doc, (str, Path)):
        if str(doc) in BUILTINS:
            doc = BUILTINS[str(doc)]
        else:
            try:
                doc = json.loads(Path(doc).read_text(encoding="utf-8"))
            except json.JSONDecodeError as exc:
                raise SchemaError(f"invalid JSON: {exc}") from None
    spec = parse_instance(doc)
    validate_category(spec.category)
    return spec


def dump_instance(C: FinCategory, *, budget: int | None = None,
                  engine: Mapping[str, Any] | None = None) -> dict[str, Any]:
    """Serialize a monoidal category back to the instance document format."""
    O, M = C.objects, C.mor_labels
    homs: dict[str, list[str]] = {}
    for (a, b), ms in C.homs.items():
        if ms:
            homs[f"{O[a]},{O[b]}"] = [M[m] for m in ms]
    doc: dict[str, Any] = {
        "name": C.name,
        "objects": list(O),
        "homs": homs,
        "comp": [[M[g], M[f], M[C.comp[g][f]]] for g, f in _composable_pairs(C)],
        "ids": {O[a]: M[C.ids[a]] for a in range(C.n_obj)},
        "tensor_obj": {f"{O[a]},{O[b]}": O[C.tensor_obj[a][b]]
                       for a in range(C.n_obj) for b in range(C.n_obj)},
        "tensor_mor": {f"{M[f]},{M[g]}": M[C.tensor_mor[f][g]]
                       for f in range(C.n_mor) for g in range(C.n_mor)},
        "unit": O[C.unit],
        "symmetry": {f"{O[a]},{O[b]}": M[C.symmetry[a][b]]
                     for a in range(C.n_obj) for b in range(C.n_obj)},
    }
    if budget is not None:
        doc["budgets"] = {"max_nat_candidates": budget}
    if engine is not None:
        doc["engine"] = copy.deepcopy(dict(engine))
    return doc


# ---------------------------------------------------------------------------
# builtin instances


def _i1() -> dict[str, Any]:
    return {
        "name": "I1",
        "objects": ["*"],
        "homs": {"*,*": ["id"]},
        "comp": [["id", "id", "id"]],
        "ids": {"*": "id"},
        "tensor_obj": {"*,*": "*"},
        "tensor_mor": {"id,id": "id"},
        "unit": "*",
        "symmetry": {"*,*": "id"},
    }


def _i2() -> dict[str, Any]:
    z2 = ["0", "1"]
    add = {(x, y): str((int(x) + int(y)) % 2) for x in z2 for y in z2}
    return {
        "name": "I2",
        "objects": ["*"],
        "homs": {"*,*": z2},
        "comp": [[g, f, add[g, f]] for g in z2 for f in z2],
        "ids": {"*": "0"},
        "tensor_obj": {"*,*": "*"},
        "tensor_mor": {f"{f},{g}": add[f, g] for f in z2 for g in z2},
        "unit": "*",
        "symmetry": {"*,*": "0"},
    }


def _i3() -> dict[str, Any]:
    objs = ["0", "1"]
    plus = {(x, y): str((int(x) + int(y)) % 2) for x in objs for y in objs}
    return {
        "name": "I3",
        "objects": objs,
        "homs": {"0,0": ["id0"], "1,1": ["id1"]},
        "comp": [["id0", "id0", "id0"], ["id1", "id1", "id1"]],
        "ids": {"0": "id0", "1": "id1"},
        "tensor_obj": {f"{x},{y}": plus[x, y] for x in objs for y in objs},
        "tensor_mor": {f"id{x},id{y}": f"id{plus[x, y]}" for x in objs for y in objs},
        "unit": "0",
        "symmetry": {f"{x},{y}": f"id{plus[x, y]}" for x in objs for y in objs},
    }


def _i4() -> dict[str, Any]:
    doc = _i1()
    doc["name"] = "I4"
    doc["engine"] = {
        "kind": "set",
        "bottom": {
            "elements": ["0", "1"],
            "mult": [["0", "0"], ["0", "1"]],
            "unit": "1",
        },
    }
    return doc


BUILTINS: dict[str, dict[str, Any]] = {
    "I1": _i1(), "I2": _i2(), "I3": _i3(), "I4": _i4(),
}


def builtin(name: str) -> FinCategory:
    return load_instance(copy.deepcopy(BUILTINS[name]))
