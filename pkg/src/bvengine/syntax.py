"""Concrete syntax for BV formulas and their interpretation as Chu objects.

Grammar (ASCII, all binary operators left-associative)::

    formula := par
    par     := seq ("||" seq)*
    seq     := tens (";" tens)*
    tens    := unary ("*" unary)*
    unary   := "~" unary | "1" | ident | "(" formula ")"

``~`` binds tightest, then ``*`` (tensor), ``;`` (sequence) and ``||`` (par).
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Mapping

from .chu import Chu, ChuObject


class FormulaSyntaxError(SyntaxError):
    """Parse failure with the offending position and the expected tokens."""

    def __init__(self, message: str, position: int, expected: frozenset[str]):
        super().__init__(f"{message} at position {position}; expected one of "
                         f"{', '.join(sorted(expected))}")
        self.position = position
        self.expected = expected


class UnboundAtom(KeyError):
    pass


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Unit:
    pass


@dataclass(frozen=True)
class Neg:
    body: "Formula"


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Seq:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Par:
    left: "Formula"
    right: "Formula"


Formula = Atom | Unit | Neg | Tensor | Seq | Par

# binding strength of each binary node; higher binds tighter
_LEVEL = {Par: 1, Seq: 2, Tensor: 3}
_SYMBOL = {Par: "||", Seq: ";", Tensor: "*"}


# ---------------------------------------------------------------------------
# lexer and parser

_TOKEN = re.compile(r"\s*(?:(\|\|)|([;*~()])|(1)(?![A-Za-z0-9_])|([A-Za-z_][A-Za-z0-9_]*))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """``(kind, text, position)`` triples ending with an ``EOF`` token."""
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:]
            if not rest.strip():
                out.append(("EOF", "", len(text)))
                return out
            where = pos + (len(rest) - len(rest.lstrip()))
            raise FormulaSyntaxError(f"unexpected character {text[where]!r}", where,
                                     frozenset({"'~'", "'1'", "'('", "identifier"}))
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("||", "||", start))
        elif m.group(2):
            out.append((m.group(2), m.group(2), start))
        elif m.group(3):
            out.append(("1", "1", start))
        else:
            out.append(("ident", m.group(4), start))
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def fail(self, expected: set[str]):
        kind, txt, pos = self.tok
        what = "end of input" if kind == "EOF" else f"token {txt!r}"
        raise FormulaSyntaxError(f"unexpected {what}", pos, frozenset(expected))

    def binary(self, op: str, node, sub) -> Formula:
        left = sub()
        while self.tok[0] == op:
            self.i += 1
            left = node(left, sub())
        return left

    def par(self) -> Formula:
        return self.binary("||", Par, self.seq)

    def seq(self) -> Formula:
        return self.binary(";", Seq, self.tens)

    def tens(self) -> Formula:
        return self.binary("*", Tensor, self.unary)

    def unary(self) -> Formula:
        kind, txt, _ = self.tok
        if kind == "~":
            self.i += 1
            return Neg(self.unary())
        if kind == "1":
            self.i += 1
            return Unit()
        if kind == "ident":
            self.i += 1
            return Atom(txt)
        if kind == "(":
            self.i += 1
            body = self.par()
            if self.tok[0] != ")":
                self.fail({"')'", "'*'", "';'", "'||'"})
            self.i += 1
            return body
        self.fail({"'~'", "'1'", "'('", "identifier"})

    def parse(self) -> Formula:
        f = self.par()
        if self.tok[0] != "EOF":
            self.fail({"'*'", "';'", "'||'", "end of input"})
        return f


def parse(text: str) -> Formula:
    return _Parser(text).parse()


def pretty(f: Formula) -> str:
    """Print with the fewest parentheses that parse back to ``f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Unit):
        return "1"
    if isinstance(f, Neg):
        inner = pretty(f.body)
        return "~" + (inner if isinstance(f.body, (Atom, Unit, Neg)) else f"({inner})")
    level = _LEVEL[type(f)]
    left, right = pretty(f.left), pretty(f.right)
    if type(f.left) in _LEVEL and _LEVEL[type(f.left)] < level:
        left = f"({left})"
    if type(f.right) in _LEVEL and _LEVEL[type(f.right)] <= level:
        right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


def atoms(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Unit):
        return set()
    if isinstance(f, Neg):
        return atoms(f.body)
    return atoms(f.left) | atoms(f.right)


def size(f: Formula) -> int:
    """Number of binary connectives."""
    if isinstance(f, (Atom, Unit)):
        return 0
    if isinstance(f, Neg):
        return size(f.body)
    return 1 + size(f.left) + size(f.right)


# ---------------------------------------------------------------------------
# interpretation


class Interpreter:
    """Structural interpretation in a Chu category, memoised on subformulas."""

    def __init__(self, chu: Chu, bindings: Mapping[str, ChuObject]):
        self.chu = chu
        self.bindings = dict(bindings)
        self._memo: dict[Formula, ChuObject] = {}

    def __call__(self, f: Formula) -> ChuObject:
        hit = self._memo.get(f)
        if hit is not None:
            return hit
        chu = self.chu
        if isinstance(f, Atom):
            if f.name not in self.bindings:
                raise UnboundAtom(f.name)
            out = self.bindings[f.name]
        elif isinstance(f, Unit):
            out = chu.unit()
        elif isinstance(f, Neg):
            out = chu.dual(self(f.body))
        elif isinstance(f, Tensor):
            out = chu.tensor(self(f.left), self(f.right))
        elif isinstance(f, Par):
            out = chu.par(self(f.left), self(f.right))
        else:
            out = chu.seq(self(f.left), self(f.right))
        self._memo[f] = out
        return out


def interpret(f: Formula, chu: Chu, bindings: Mapping[str, ChuObject]) -> ChuObject:
    return Interpreter(chu, bindings)(f)


# ---------------------------------------------------------------------------
# random formulas


def random_formula(rng: random.Random, names: list[str], max_binary: int,
                   neg_prob: float = 0.3, unit_prob: float = 0.1) -> Formula:
    """A formula with at most ``max_binary`` binary connectives."""
    if max_binary == 0 or rng.random() < 0.25:
        base: Formula = Unit() if rng.random() < unit_prob else Atom(rng.choice(names))
    else:
        k = rng.randint(0, max_binary - 1)
        node = rng.choice((Tensor, Seq, Par))
        base = node(random_formula(rng, names, k, neg_prob, unit_prob),
                    random_formula(rng, names, max_binary - 1 - k, neg_prob, unit_prob))
    while rng.random() < neg_prob:
        base = Neg(base)
    return base


def formula_corpus(n: int = 200, names: list[str] | None = None, max_binary: int = 3,
                   seed: int = 0) -> list[Formula]:
    rng = random.Random(seed)
    names = names or ["a", "b"]
    return [random_formula(rng, names, max_binary) for _ in range(n)]


def iter_subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Neg):
        yield from iter_subformulas(f.body)
    elif not isinstance(f, (Atom, Unit)):
        yield from iter_subformulas(f.left)
        yield from iter_subformulas(f.right)
