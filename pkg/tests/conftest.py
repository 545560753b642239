from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def vect():
    from nexang.fixtures import vect_category

    return vect_category(2)


@pytest.fixture(scope="session")
def vect3():
    from nexang.fixtures import vect_category

    return vect_category(3)


@pytest.fixture(scope="session")
def doubled():
    from nexang.fixtures import doubled_category

    return doubled_category(2)


@pytest.fixture(scope="session")
def nakayama():
    from nexang.fixtures import nakayama_category

    return nakayama_category(2)


@pytest.fixture(scope="session")
def stable(vect):
    from nexang.fixtures import stable_angulation

    return stable_angulation(vect)


@pytest.fixture(scope="session")
def doubling(vect, doubled):
    from nexang.fixtures import doubling_witness

    return doubling_witness(vect, doubled)
