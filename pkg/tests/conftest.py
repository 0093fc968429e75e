"""Shared pytest fixtures for the DegSDP tests."""

import json
from pathlib import Path

import pytest
from sympy import ImmutableMatrix

from degsdp.pencil.model import ObjectiveForm, PerturbationMatrix, SymmetricPencil, parse_instance

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def tmp_db(tmp_path):
    """Provide a temporary SQLite database path."""
    return str(tmp_path / "test_trace.db")


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Ensure no DSDP_* settings leak into tests."""
    for name in (
        "DSDP_WORKERS",
        "DSDP_STRATUM_BUDGET",
        "DSDP_MAX_RESEEDS",
        "DSDP_SEED",
        "DSDP_TRACE_DB",
        "DSDP_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def fixture_path():
    def resolve(name: str) -> str:
        return str(FIXTURES / name)

    return resolve


def load_fixture(name: str):
    return parse_instance(json.loads((FIXTURES / name).read_text()))


@pytest.fixture
def instance():
    """Load an instance document from tests/fixtures by file name."""
    return load_fixture


@pytest.fixture
def worked():
    """The degenerate 2x2 example at p = (1, 1) with objective 88*x1 - 94*x2."""
    return load_fixture("worked.json")


@pytest.fixture
def worked_B():
    return PerturbationMatrix(ImmutableMatrix([[80, -68], [-68, 109]]))


@pytest.fixture
def interval():
    """diag(x1, 1 - x1) with objective x1; minimum 0 at x1 = 0."""
    return load_fixture("interval.json")


@pytest.fixture
def identity_pencil():
    """[[-x1, x2], [x2, x1]], the example pencil at p = (0, 0)."""
    return SymmetricPencil.from_rows([
        [[0, 0], [0, 0]],
        [[-1, 0], [0, 1]],
        [[0, 1], [1, 0]],
    ])


@pytest.fixture
def line_pencil():
    """The 1x1 pencil (x1)."""
    return SymmetricPencil.from_rows([[[0]], [[1]]]), ObjectiveForm((1,))
