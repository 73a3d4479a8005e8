"""Shared fixtures: the complex documents under fixtures/ and a clean config."""

from pathlib import Path

import pytest

from src.core.config import Tolerances, reset_config
from src.io import read_document

FIXTURES = Path(__file__).parent.parent / "fixtures"


def load_fixture(name, tolerances=None):
    """(complex, metric) of fixtures/<name>.yaml."""
    return read_document(FIXTURES / f"{name}.yaml").build(tolerances)


def fixture_path(name):
    return str(FIXTURES / f"{name}.yaml")


@pytest.fixture(autouse=True)
def _fresh_config(monkeypatch):
    """Every test starts from config/config.yaml with no environment overrides."""
    for var in ('CAT0_ENV', 'CAT0_CONFIG', 'CAT0_WORKERS'):
        monkeypatch.delenv(var, raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def tolerances():
    return Tolerances()


@pytest.fixture
def tetra():
    return load_fixture('tetra')


@pytest.fixture
def chain3():
    return load_fixture('chain3')


@pytest.fixture
def dunce_hat():
    return load_fixture('dunce_hat')


@pytest.fixture
def degree5():
    return load_fixture('degree5')


@pytest.fixture
def degree6():
    return load_fixture('degree6')


@pytest.fixture
def regular_star():
    return load_fixture('regular_star')


@pytest.fixture
def single_fin():
    return load_fixture('single_fin')


@pytest.fixture
def perturbed_star():
    return load_fixture('perturbed_star')
