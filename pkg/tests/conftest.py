from __future__ import annotations

import functools

import pytest

from bvengine.models import Model, load_config, load_model


@functools.lru_cache(maxsize=None)
def model(name: str) -> Model:
    """Builtin instance with its default bindings, shared across tests."""
    return load_model(name)


def corpus(name: str) -> list:
    m = model(name)
    return m.objects(load_config(None, m)["corpus"])


@pytest.fixture(scope="session")
def I2() -> Model:
    return model("I2")


@pytest.fixture(scope="session")
def I3() -> Model:
    return model("I3")


@pytest.fixture(scope="session")
def I4() -> Model:
    return model("I4")
