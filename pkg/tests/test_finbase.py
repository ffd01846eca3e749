from __future__ import annotations

import copy
import json

import pytest
from hypothesis import given, strategies as st

from bvengine.finbase import (
    BUILTINS, AssocViolation, IdentityViolation, SchemaError, builtin, compose,
    dump_instance, load_instance, tensor_mor, validate_category,
)


@pytest.mark.parametrize("name", ["I1", "I2", "I3", "I4"])
def test_builtins_validate(name):
    assert validate_category(builtin(name))


def test_sizes():
    assert builtin("I1").describe() == {"objects": 1, "morphisms": 1}
    assert builtin("I2").describe() == {"objects": 1, "morphisms": 2}
    assert builtin("I3").describe() == {"objects": 2, "morphisms": 2}


def test_i2_composition_is_addition():
    C = builtin("I2")
    one = C.mor_index["1"]
    zero = C.mor_index["0"]
    assert compose(C, one, one) == zero
    assert compose(C, one, zero) == one
    assert tensor_mor(C, one, one) == zero


def test_i1_identity():
    C = builtin("I1")
    assert compose(C, C.ids[0], C.ids[0]) == C.ids[0]


def test_i3_tensor_is_addition_mod_two():
    C = builtin("I3")
    for x in range(2):
        for y in range(2):
            assert C.tensor(x, y) == (x + y) % 2
            assert C.tensor_m(C.ids[x], C.ids[y]) == C.ids[(x + y) % 2]


def test_wrong_identity_rejected():
    doc = copy.deepcopy(BUILTINS["I2"])
    doc["ids"] = {"*": "1"}
    with pytest.raises(IdentityViolation):
        load_instance(doc)


def test_non_associative_composition_rejected():
    doc = {
        "objects": ["*"],
        "homs": {"*,*": ["e", "a", "b"]},
        # e is the identity; a∘a = b, a∘b = a, b∘a = b, b∘b = a
        "comp": [["e", "e", "e"], ["e", "a", "a"], ["e", "b", "b"],
                 ["a", "e", "a"], ["b", "e", "b"],
                 ["a", "a", "b"], ["a", "b", "a"], ["b", "a", "b"], ["b", "b", "a"]],
        "ids": {"*": "e"},
        "tensor_obj": {"*,*": "*"},
        "tensor_mor": {f"{f},{g}": "e" for f in "eab" for g in "eab"},
        "unit": "*",
        "symmetry": {"*,*": "e"},
    }
    with pytest.raises((AssocViolation, IdentityViolation)):
        load_instance(doc)


def test_undeclared_morphism_is_schema_error():
    doc = copy.deepcopy(BUILTINS["I2"])
    doc["comp"].append(["0", "ghost", "0"])
    with pytest.raises(SchemaError):
        load_instance(doc)


def test_missing_field_is_schema_error():
    doc = copy.deepcopy(BUILTINS["I1"])
    del doc["symmetry"]
    with pytest.raises(SchemaError):
        load_instance(doc)


def test_invalid_json_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError):
        load_instance(p)


@pytest.mark.parametrize("name", ["I1", "I2", "I3"])
def test_dump_round_trip(name, tmp_path):
    C = builtin(name)
    p = tmp_path / "inst.json"
    p.write_text(json.dumps(dump_instance(C)))
    assert load_instance(p) == C


@given(st.sampled_from(["I1", "I2", "I3"]), st.data())
def test_category_laws(name, data):
    C = builtin(name)
    f = data.draw(st.integers(0, C.n_mor - 1))
    g = data.draw(st.sampled_from(C.out_mors[C.dst[f]]))
    h = data.draw(st.sampled_from(C.out_mors[C.dst[g]]))
    assert C.compose(h, C.compose(g, f)) == C.compose(C.compose(h, g), f)
    assert C.compose(C.ids[C.dst[f]], f) == f == C.compose(f, C.ids[C.src[f]])
    f2 = data.draw(st.integers(0, C.n_mor - 1))
    # interchange of ⊗ with composition on endomorphism pairs
    if C.src[f] == C.dst[f] and C.src[f2] == C.dst[f2]:
        assert C.tensor_m(C.compose(f, f), C.compose(f2, f2)) == \
            C.compose(C.tensor_m(f, f2), C.tensor_m(f, f2))
