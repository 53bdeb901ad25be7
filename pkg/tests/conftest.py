from pathlib import Path

import pytest

from hamchain import gates
from hamchain.circuit import Circuit

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def ws_circuit_3q2r() -> Circuit:
    """3-qubit, 2-round circuit in the native {W,S} set."""
    return Circuit(3, 2, {
        (1, 1): gates.W, (1, 2): gates.SWAP,
        (2, 1): gates.SWAP, (2, 2): gates.W,
    })


@pytest.fixture(scope="session")
def w_circuit_2q() -> Circuit:
    """2-qubit, 1-round circuit applying W."""
    return Circuit(2, 1, {(1, 1): gates.W})
