"""Shared fixtures: environment isolation and cached enumeration results."""

from __future__ import annotations

import pytest

import spanlab as S


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch):
    """Keep ambient SPANLAB_* settings from leaking into any test."""
    for var in ("SPANLAB_STORE", "SPANLAB_THREADS", "SPANLAB_SEED"):
        monkeypatch.delenv(var, raising=False)


def _records(spec: str):
    return list(S.enumerate_extremal(S.parse_group_spec(spec)))


@pytest.fixture(scope="session")
def z15_records():
    return _records("Z15")


@pytest.fixture(scope="session")
def z16_records():
    return _records("Z16")


@pytest.fixture(scope="session")
def z21_records():
    return _records("Z21")
