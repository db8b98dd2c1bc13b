"""Shared fixtures and directory markers for the test suite."""

import sys
from pathlib import Path

import pytest

# Repository root on sys.path for the src.drinfeld_modpoly imports
repo_root = Path(__file__).parent.parent
if str(repo_root) not in sys.path:
    sys.path.insert(0, str(repo_root))

from src.drinfeld_modpoly.algebra.field import field_for_q  # noqa: E402
from src.drinfeld_modpoly.algebra.polya import poly_ring  # noqa: E402

TESTS_DIR = Path(__file__).parent

# Test directory -> marker applied to every test collected from it
DIRECTORY_MARKERS = {
    "unit": pytest.mark.unit,
    "algebra": pytest.mark.algebra,
    "expansion": pytest.mark.expansion,
    "lattice": pytest.mark.lattice,
    "modpoly": pytest.mark.modpoly,
    "integration": pytest.mark.integration,
}


def pytest_collection_modifyitems(items):
    """Mark each test after the directory it lives in."""
    for item in items:
        item_path = Path(item.fspath)
        for name, marker in DIRECTORY_MARKERS.items():
            if TESTS_DIR / name in item_path.parents:
                item.add_marker(marker)


# =============================================================================
# Rings
# =============================================================================


@pytest.fixture
def F2():
    return field_for_q(2)


@pytest.fixture
def F3():
    return field_for_q(3)


@pytest.fixture
def A2(F2):
    return poly_ring(F2)


@pytest.fixture
def A3(F3):
    return poly_ring(F3)
