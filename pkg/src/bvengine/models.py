"""Models: an instance, its engine and Chu layer, and named atom bindings.

A binding maps an atom name to a Chu object.  The accepted forms are

* ``{"faithful": [x, x']}``, ``{"event": [x, x']}``, ``{"first_order": x}``
  over a strong-profunctor engine, with objects given by label or index;
* ``{"embed": [labels...]}`` and
  ``{"chu": {"first": [...], "second": [...], "pairing": table}}`` over the
  finite-set engine, where ``table`` is ``"and"``, ``"or"``, ``"left"``,
  ``"right"`` or an object mapping ``"x,y"`` to a ``⊥`` label.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .chu import Chu, ChuObject
from .engines import CopresheafEngine, SetEngine, engine_for
from .events import Envelope
from .finbase import BUILTINS, InstanceSpec, SchemaError, load_instance_spec
from .syntax import Interpreter, parse


class ConfigError(Exception):
    pass


_NAMED_PAIRINGS = {
    "and": lambda x, y: "1" if (x, y) == ("1", "1") else "0",
    "or": lambda x, y: "1" if "1" in (x, y) else "0",
    "left": lambda x, y: x,
    "right": lambda x, y: y,
}


@dataclass
class Model:
    """Everything needed to interpret formulas over one instance."""

    name: str
    spec: InstanceSpec
    engine: CopresheafEngine
    chu: Chu
    envelope: Envelope | None
    bindings: dict[str, ChuObject] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return "set" if isinstance(self.engine, SetEngine) else "stprof"

    def interpreter(self) -> Interpreter:
        return Interpreter(self.chu, self.bindings)

    def objects(self, formulas: list[str]) -> list[ChuObject]:
        interp = self.interpreter()
        return [interp(parse(f)) for f in formulas]

    # ------------------------------------------------------------------

    def _obj(self, label: Any) -> int:
        C = self.spec.category
        if isinstance(label, int) and 0 <= label < C.n_obj:
            return label
        if isinstance(label, str) and label in C.obj_index:
            return C.obj_index[label]
        raise ConfigError(f"unknown object {label!r}")

    def pair(self, spec: Any) -> tuple[int, int]:
        if not isinstance(spec, (list, tuple)) or len(spec) != 2:
            raise ConfigError(f"expected a pair of objects, got {spec!r}")
        return self._obj(spec[0]), self._obj(spec[1])

    def resolve(self, spec: Mapping[str, Any]) -> ChuObject:
        if not isinstance(spec, Mapping) or len(spec) != 1:
            raise ConfigError(f"a binding is a one-key object, got {spec!r}")
        (kind, arg), = spec.items()
        if kind in ("faithful", "event", "first_order"):
            if self.envelope is None:
                raise ConfigError(f"{kind} bindings need a strong-profunctor instance")
            if kind == "first_order":
                return self.envelope.first_order(self._obj(arg))
            return getattr(self.envelope, kind)(self.pair(arg))
        if kind in ("embed", "chu"):
            if not isinstance(self.engine, SetEngine):
                raise ConfigError(f"{kind} bindings need the finite-set engine")
            S = self.engine
            if kind == "embed":
                return self.chu.embed(S.obj([str(x) for x in arg]))
            first = S.obj([str(x) for x in arg["first"]])
            second = S.obj([str(x) for x in arg["second"]])
            table = arg.get("pairing", "and")
            if isinstance(table, str):
                if table not in _NAMED_PAIRINGS:
                    raise ConfigError(f"unknown pairing {table!r}")
                fn = _NAMED_PAIRINGS[table]
            else:
                fn = lambda x, y: str(table[f"{x},{y}"])  # noqa: E731
            try:
                return self.chu.obj(first, second, S.pairing(first, second, fn))
            except (KeyError, ValueError) as exc:
                raise ConfigError(f"pairing does not land in ⊥: {exc}") from None
        raise ConfigError(f"unknown binding kind {kind!r}")

    def bind(self, bindings: Mapping[str, Any]) -> None:
        for name, spec in bindings.items():
            self.bindings[name] = self.resolve(spec)


def load_model(instance: str | Path | Mapping[str, Any], budget: int | None = None,
               bindings: Mapping[str, Any] | None = None) -> Model:
    """Load an instance by builtin name, path or document and bind atoms
    (the defaults for the instance when ``bindings`` is ``None``)."""
    spec = load_instance_spec(instance)
    name = spec.name or str(instance)
    engine = engine_for(spec, budget)
    envelope = None if isinstance(engine, SetEngine) else Envelope(engine)
    model = Model(name, spec, engine, envelope.chu if envelope else Chu(engine), envelope)
    model.bind(default_config(model)["bindings"] if bindings is None else bindings)
    return model


def default_config(model: Model) -> dict[str, Any]:
    """Bindings, corpus and event pairs used when no suite file is given."""
    if model.kind == "set":
        return {
            "bindings": {
                "a": {"chu": {"first": ["0", "1"], "second": ["0", "1"], "pairing": "and"}},
                "b": {"chu": {"first": ["0"], "second": ["0", "1"], "pairing": "right"}},
            },
            "corpus": ["a", "b", "1"],
            "pairs": [],
        }
    C = model.spec.category
    objs = list(range(C.n_obj))
    diag = [[x, x] for x in objs]
    bindings: dict[str, Any] = {"a": {"faithful": diag[0]}, "b": {"first_order": objs[-1]}}
    corpus = ["a", "b"]
    if C.n_obj > 1:
        bindings["c"] = {"faithful": [objs[0], objs[-1]]}
        corpus.append("c")
    else:
        bindings["c"] = {"event": diag[0]}
        corpus += ["c", "1"]
    pairs = [[p, q] for p in diag for q in diag]
    return {"bindings": bindings, "corpus": corpus, "pairs": pairs}


def load_config(path: str | Path | None, model: Model) -> dict[str, Any]:
    """Merge a suite configuration file over the defaults for ``model``."""
    cfg = default_config(model)
    if path is None:
        return cfg
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read suite configuration: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("suite configuration must be a JSON object")
    unknown = set(doc) - {"bindings", "corpus", "pairs"}
    if unknown:
        raise ConfigError(f"unknown configuration fields {sorted(unknown)}")
    if "bindings" in doc:
        model.bindings.clear()
        model.bind(doc["bindings"])
    cfg.update(doc)
    return cfg


def is_builtin(name: str) -> bool:
    return name in BUILTINS


__all__ = ["ConfigError", "Model", "SchemaError", "default_config", "is_builtin",
           "load_config", "load_model"]
