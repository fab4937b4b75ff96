"""
Tests for the leveled DAG, bundle extraction, path counting and path enumeration.
"""

import sys
from math import comb
from pathlib import Path

import pytest
from hypothesis import given, settings

project_root = Path(__file__).parent.parent
sys.path.append(str(project_root / "20-config"))
sys.path.append(str(project_root / "30-database"))
sys.path.append(str(project_root / "40-analysis"))

from bundle import (all_bundles, bundle_to_dict, count_paths, enumerate_paths, extract_bundle,
                    leveled_dag)
from errors import CapacityError, InputError, PathCountOverflowError
from graph import Graph
from graph_strategies import graphs, shortest_path_links
from hierarchy import bfs_hierarchy
from network_generator import lattice

BRAID_PATHS = [(1, 4, 7, 10), (1, 4, 8, 10), (1, 5, 7, 10)]


def _bundle(graph, source, destination):
    return extract_bundle(leveled_dag(graph, bfs_hierarchy(graph, source)), destination)


def _node(rows_cols, r, c):
    return r * rows_cols + c


def test_braid_links(braid_graph):
    dag = leveled_dag(braid_graph, bfs_hierarchy(braid_graph, 1))
    assert set(dag.links) == {(1, 4), (1, 5), (4, 7), (4, 8), (5, 7), (7, 10), (8, 10)}


def test_path_graph_links():
    graph = Graph(3, ((0, 1), (1, 2)))
    assert leveled_dag(graph, bfs_hierarchy(graph, 0)).links == ((0, 1), (1, 2))


def test_intra_level_edges_are_dropped():
    graph = Graph(4, ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3)))
    assert leveled_dag(graph, bfs_hierarchy(graph, 0)).links == ((0, 1), (0, 2), (1, 3), (2, 3))


def test_shell_link_count():
    # brute force: edges whose endpoints lie in consecutive BFS shells
    graph = lattice(5, 5)
    hierarchy = bfs_hierarchy(graph, 12)
    expected = sum(1 for u, v in graph.edges if abs(hierarchy.level[u] - hierarchy.level[v]) == 1)
    assert len(leveled_dag(graph, hierarchy).links) == expected


def test_foreign_hierarchy_rejected(braid_graph, path_graph):
    with pytest.raises(InputError):
        leveled_dag(path_graph, bfs_hierarchy(braid_graph, 10))


def test_braid_bundle(braid_graph):
    bundle = _bundle(braid_graph, 1, 10)
    assert bundle.length == 3
    assert bundle.level_nodes == ((1,), (4, 5), (7, 8), (10,))
    assert bundle.link_counts == (2, 3, 2)
    assert count_paths(bundle) == 3
    assert enumerate_paths(bundle, cap=10) == BRAID_PATHS


def test_chain_bundle(path_graph):
    bundle = _bundle(path_graph, 0, 3)
    assert bundle.link_counts == (1, 1, 1)
    assert count_paths(bundle) == 1
    assert enumerate_paths(bundle) == [(0, 1, 2, 3)]


def test_unreachable_destination():
    graph = Graph(4, ((0, 1), (2, 3)))
    assert _bundle(graph, 0, 3) is None


def test_destination_equals_source(path_graph):
    with pytest.raises(InputError):
        _bundle(path_graph, 2, 2)


def test_bundle_excludes_side_branches():
    # 0-1-2 plus a dead end 1-3 at level 2
    graph = Graph(4, ((0, 1), (1, 2), (1, 3)))
    bundle = _bundle(graph, 0, 2)
    assert bundle.nodes == (0, 1, 2)


@pytest.mark.parametrize("dr,dc,expected", [(0, 3, 1), (2, 3, 10), (1, 3, 4)])
def test_lattice_path_counts(lattice_7x7, dr, dc, expected):
    destination = _node(7, 3 + dr, 3 + dc)
    bundle = _bundle(lattice_7x7, 24, destination)
    assert count_paths(bundle) == expected
    assert len(enumerate_paths(bundle)) == expected


@pytest.mark.parametrize("dx,dy", [(dx, L - dx) for L in range(1, 8) for dx in range(0, L + 1)])
def test_binomial_counts(lattice_15x15, dx, dy):
    destination = _node(15, 7 + dy, 7 + dx)
    assert count_paths(_bundle(lattice_15x15, 112, destination)) == comb(dx + dy, dx)


def test_dihedral_symmetry(lattice_15x15):
    counts = {}
    for dx, dy in [(2, 3), (-2, 3), (2, -3), (-2, -3), (3, 2), (-3, 2), (3, -2), (-3, -2)]:
        bundle = _bundle(lattice_15x15, 112, _node(15, 7 + dy, 7 + dx))
        counts[(dx, dy)] = (count_paths(bundle), bundle.link_counts, bundle.level_sizes)
    assert len(set(counts.values())) == 1


def test_enumeration_cap(braid_graph):
    bundle = _bundle(braid_graph, 1, 10)
    assert len(enumerate_paths(bundle, cap=3)) == 3
    with pytest.raises(CapacityError) as info:
        enumerate_paths(bundle, cap=2)
    assert info.value.found == 3
    with pytest.raises(InputError):
        enumerate_paths(bundle, cap=0)


def test_count_overflow(lattice_15x15):
    bundle = _bundle(lattice_15x15, 0, 224)
    assert count_paths(bundle) == comb(28, 14)
    with pytest.raises(PathCountOverflowError):
        count_paths(bundle, max_count=1000)


def test_all_bundles_shell(lattice_15x15):
    bundles = all_bundles(lattice_15x15, 112, 2)
    expected = sorted(_node(15, 7 + dy, 7 + dx)
                      for dx in range(-2, 3) for dy in range(-2, 3) if abs(dx) + abs(dy) == 2)
    assert [b.destination for b in bundles] == expected
    assert len(bundles) == 8


def test_all_bundles_beyond_eccentricity(lattice_7x7):
    assert all_bundles(lattice_7x7, 24, 7) == []


def test_corner_to_corner(lattice_7x7):
    bundles = all_bundles(lattice_7x7, 0, 12)
    assert [b.destination for b in bundles] == [48]
    assert count_paths(bundles[0]) == comb(12, 6)


def test_all_bundles_invalid_length(lattice_7x7):
    with pytest.raises(InputError):
        all_bundles(lattice_7x7, 24, 0)


def test_bundle_to_dict(braid_graph):
    data = bundle_to_dict(_bundle(braid_graph, 1, 10))
    assert data["levels"] == [[1], [4, 5], [7, 8], [10]]
    assert data["links"][1] == [[4, 7], [4, 8], [5, 7]]
    assert data["level_sizes"] == [1, 2, 2, 1]
    assert data["link_counts"] == [2, 3, 2]


@settings(max_examples=200, deadline=None)
@given(graphs(max_nodes=30))
def test_bundle_matches_shortest_path_oracle(graph):
    for source in range(min(graph.node_count, 3)):
        hierarchy = bfs_hierarchy(graph, source)
        dag = leveled_dag(graph, hierarchy)
        for destination in hierarchy.level:
            if destination == source:
                continue
            bundle = extract_bundle(dag, destination)
            links, count = shortest_path_links(graph, source, destination)
            assert set(bundle.links) == links
            assert count_paths(bundle) == count
            assert len(enumerate_paths(bundle)) == count
            assert bundle.length == hierarchy.level[destination]
            assert all(len(level) >= 1 for level in bundle.level_links)
