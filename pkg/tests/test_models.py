from __future__ import annotations

import json

import pytest

from bvengine.models import ConfigError, default_config, is_builtin, load_config, load_model


def test_kinds():
    assert load_model("I4").kind == "set"
    assert load_model("I2").kind == "stprof"
    assert is_builtin("I3") and not is_builtin("I9")


def test_default_bindings():
    m = load_model("I2")
    assert set(m.bindings) == {"a", "b", "c"}
    cfg = default_config(m)
    assert cfg["corpus"] == ["a", "b", "c", "1"]
    assert cfg["pairs"] == [[[0, 0], [0, 0]]]
    m3 = load_model("I3")
    assert default_config(m3)["corpus"] == ["a", "b", "c"]
    assert len(default_config(m3)["pairs"]) == 4


def test_set_bindings():
    m = load_model("I4", bindings={
        "x": {"embed": ["0", "1", "2"]},
        "y": {"chu": {"first": ["0", "1"], "second": ["0"], "pairing": {"0,0": "1", "1,0": "0"}}},
    })
    assert m.bindings["x"].sizes() == {"first": (3,), "second": (8,)}
    assert m.bindings["y"].sizes() == {"first": (2,), "second": (1,)}


@pytest.mark.parametrize("bindings", [
    {"a": {"faithful": [0, 0]}},
    {"a": {"chu": {"first": ["0"], "second": ["0"], "pairing": "xor"}}},
    {"a": {"chu": {"first": ["0"], "second": ["0"], "pairing": {"0,0": "7"}}}},
    {"a": {"mystery": 1}},
    {"a": {"embed": ["0"], "faithful": [0, 0]}},
])
def test_bad_set_bindings(bindings):
    with pytest.raises(ConfigError):
        load_model("I4", bindings=bindings)


@pytest.mark.parametrize("bindings", [
    {"a": {"embed": ["0"]}},
    {"a": {"faithful": ["nope", "0"]}},
    {"a": {"event": [0]}},
])
def test_bad_stprof_bindings(bindings):
    with pytest.raises(ConfigError):
        load_model("I3", bindings=bindings)


def test_load_config(tmp_path):
    m = load_model("I3")
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"bindings": {"p": {"faithful": ["0", "1"]}}, "corpus": ["p", "~p"]}))
    cfg = load_config(p, m)
    assert cfg["corpus"] == ["p", "~p"]
    assert set(m.bindings) == {"p"}
    assert len(m.objects(cfg["corpus"])) == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"unknown": 1}))
    with pytest.raises(ConfigError):
        load_config(bad, m)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json", m)
