# tests/conftest.py
import sys
from pathlib import Path

import pytest

# Fix Import Paths
root_dir = Path(__file__).resolve().parent.parent
sys.path.append(str(root_dir))

from src.brauer.coefficients import parse_ring


@pytest.fixture
def z0():
    """Integers with delta = 0 (the non-invertible case most statements care about)."""
    return parse_ring("Z", "0")


@pytest.fixture
def z1():
    return parse_ring("Z", "1")


@pytest.fixture
def z2():
    return parse_ring("Z", "2")


@pytest.fixture
def q1():
    return parse_ring("Q", "1")


@pytest.fixture
def ring_factory():
    """Build any ring from its CLI spelling inside a test."""
    return parse_ring
