"""
Shared pytest configuration: layer directories on sys.path and common fixtures.
"""

import sys
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent
for layer in ("20-config", "30-database", "40-analysis", "50-visualization"):
    sys.path.append(str(project_root / layer))
sys.path.append(str(project_root))

from graph import Graph
from network_generator import lattice

# Braided bundle: nodes 1, 4, 5, 7, 8, 10 with three paths from 1 to 10
BRAID_EDGES = ((1, 4), (1, 5), (4, 7), (4, 8), (5, 7), (7, 10), (8, 10))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long acceptance-style experiment")


@pytest.fixture
def braid_graph():
    return Graph(11, BRAID_EDGES)


@pytest.fixture
def path_graph():
    return Graph(4, ((0, 1), (1, 2), (2, 3)))


@pytest.fixture
def diamond_graph():
    return Graph(4, ((0, 1), (0, 2), (1, 3), (2, 3)))


@pytest.fixture(scope="session")
def lattice_7x7():
    return lattice(7, 7)


@pytest.fixture(scope="session")
def lattice_15x15():
    return lattice(15, 15)
