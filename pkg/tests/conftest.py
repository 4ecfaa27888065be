"""Shared fixtures: seeded keys, an identity provider, realm helpers."""

from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from fab.credentials import IdentityProvider, register
from fab.directory import DirectoryClient, DirectoryStore, InProcessTransport
from fab.params import SystemParams
from fab.realm import create_realm, setup_system

GOLDEN = json.loads((Path(__file__).parent / "golden" / "vectors.json").read_text())
DEPTH = 8


@pytest.fixture(scope="session")
def golden() -> dict:
    return GOLDEN


@pytest.fixture(scope="session")
def params() -> SystemParams:
    return SystemParams(depth=DEPTH)


@pytest.fixture(scope="session")
def ref_keys(params):
    return setup_system(params, "reference", rng=random.Random(1), with_trapdoor=True)


@pytest.fixture(scope="session")
def ip():
    return IdentityProvider(rng=random.Random(2))


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def user(ip, rng):
    return register(rng.randrange(1, 1 << 250), ip)


@pytest.fixture
def make_realm(params, rng):
    def make(realm_id: str):
        return create_realm(params, realm_id, rng)
    return make


@pytest.fixture
def directory():
    return DirectoryClient(InProcessTransport(DirectoryStore()))
