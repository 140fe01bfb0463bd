"""Shared fixtures: the four test fields and session-wide table stores."""

from pathlib import Path

import pytest

from idealsums import TableStore, load_field

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"

_FIELD_FILES = {
    "q": "q.toml",
    "qi": "q_i.toml",
    "qm5": "q_sqrt_m5.toml",
    "qr2": "q_sqrt_2.toml",
}

_specs = {}
_stores = {}


def _get(name):
    if name not in _specs:
        _specs[name] = load_field(CONFIG_DIR / _FIELD_FILES[name])
        _stores[name] = TableStore(_specs[name])
    return _specs[name], _stores[name]


@pytest.fixture(scope="session")
def field_q():
    return _get("q")[0]


@pytest.fixture(scope="session")
def field_qi():
    return _get("qi")[0]


@pytest.fixture(scope="session")
def field_qm5():
    return _get("qm5")[0]


@pytest.fixture(scope="session")
def field_qr2():
    return _get("qr2")[0]


@pytest.fixture(scope="session")
def all_fields():
    return {name: _get(name)[0] for name in _FIELD_FILES}


@pytest.fixture(scope="session")
def store_for():
    """Session-wide TableStore per field, so expensive tables are built
    once across the whole run."""

    def get(name: str) -> TableStore:
        return _get(name)[1]

    return get
