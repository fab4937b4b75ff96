"""
Tests for the Graph type, graph files and hierarchical neighborhoods.
"""

import json
import sys
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import given, settings

project_root = Path(__file__).parent.parent
sys.path.append(str(project_root / "20-config"))
sys.path.append(str(project_root / "30-database"))
sys.path.append(str(project_root / "40-analysis"))

from errors import GraphSchemaError, InputError
from graph import Graph, center_node
from graph_store import graph_from_dict, load_edge_list, load_graph, save_graph
from graph_strategies import graphs, to_networkx
from hierarchy import bfs_hierarchy
from network_generator import lattice


def test_braid_frontiers(braid_graph):
    hierarchy = bfs_hierarchy(braid_graph, 1)
    assert hierarchy.frontiers == ((1,), (4, 5), (7, 8), (10,))
    assert hierarchy.depth == 3
    assert hierarchy.level_of(0) is None
    assert hierarchy.reachable_count == 6


def test_path_graph_frontiers(path_graph):
    assert bfs_hierarchy(path_graph, 0).frontiers == ((0,), (1,), (2,), (3,))


def test_nodes_at_out_of_range(path_graph):
    hierarchy = bfs_hierarchy(path_graph, 0)
    assert hierarchy.nodes_at(4) == ()
    assert hierarchy.nodes_at(-1) == ()


def test_isolated_source():
    hierarchy = bfs_hierarchy(Graph(3, ((1, 2),)), 0)
    assert hierarchy.frontiers == ((0,),)


@pytest.mark.parametrize("source", [-1, 4, 1.5, True, "0"])
def test_invalid_source(path_graph, source):
    with pytest.raises(InputError):
        bfs_hierarchy(path_graph, source)


@settings(max_examples=60, deadline=None)
@given(graphs(max_nodes=20))
def test_levels_match_floyd_warshall(graph):
    distances = nx.floyd_warshall(to_networkx(graph))
    for source in range(graph.node_count):
        hierarchy = bfs_hierarchy(graph, source)
        expected = {v: int(d) for v, d in distances[source].items() if d != float("inf")}
        assert hierarchy.level == expected
        assert sum(len(f) for f in hierarchy.frontiers) == hierarchy.reachable_count
        for h, frontier in enumerate(hierarchy.frontiers):
            assert list(frontier) == sorted(frontier)
            assert all(hierarchy.level[v] == h for v in frontier)


def test_graph_normalizes_edges():
    graph = Graph(3, ((2, 1), (0, 1)))
    assert graph.edges == ((0, 1), (1, 2))
    assert graph.neighbors(1) == (0, 2)
    assert graph.degree(1) == 2
    assert graph.has_edge(2, 1)
    assert not graph.has_edge(0, 2)


@pytest.mark.parametrize("edges", [((1, 1),), ((0, 1), (1, 0)), ((0, 3),)])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(GraphSchemaError):
        Graph(3, edges)


def test_save_load_round_trip(tmp_path):
    graph = lattice(7, 7)
    path = tmp_path / "lattice.json"
    save_graph(graph, path)
    loaded = load_graph(path)
    assert loaded.edges == graph.edges
    assert loaded.coords == graph.coords
    assert loaded == graph


def test_self_loop_file(tmp_path):
    path = tmp_path / "loop.json"
    path.write_text(json.dumps({"n": 4, "edges": [[0, 1], [3, 3]]}))
    with pytest.raises(GraphSchemaError, match="self-loop"):
        load_graph(path)


def test_duplicate_edge_file(tmp_path):
    path = tmp_path / "dup.json"
    path.write_text(json.dumps({"n": 4, "edges": [[0, 1], [1, 2], [0, 1]]}))
    with pytest.raises(GraphSchemaError, match=r"duplicate edge.*\[0, 1\]"):
        load_graph(path)


@pytest.mark.parametrize("data", [
    {"edges": [[0, 1]]},
    {"n": -1, "edges": []},
    {"n": 3, "edges": [[1, 0]]},
    {"n": 3, "edges": [[0, 5]]},
    {"n": 3, "edges": [[0, 1.0]]},
    {"n": 2, "edges": [[0, 1]], "coords": [[0.0, 0.0]]},
    {"n": 2, "edges": [[0, 1]], "coords": [[0.0, 0.0], [1.0, "y"]]},
])
def test_schema_errors(data):
    with pytest.raises(GraphSchemaError):
        graph_from_dict(data)


def test_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{\"n\": 3, ")
    with pytest.raises(GraphSchemaError):
        load_graph(path)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_graph(tmp_path / "absent.json")


def test_integer_edge_list(tmp_path):
    path = tmp_path / "edges.txt"
    path.write_text("# comment\n0 1\n\n1 4\n")
    graph = load_edge_list(path)
    assert graph.node_count == 5
    assert graph.edges == ((0, 1), (1, 4))
    assert graph.labels is None


def test_labelled_edge_list_round_trip(tmp_path):
    path = tmp_path / "edges.txt"
    path.write_text("a b\nb c\nc a\n")
    graph = load_graph(path)
    assert graph.node_count == 3
    assert graph.labels == ("a", "b", "c")
    assert graph.edges == ((0, 1), (0, 2), (1, 2))
    save_graph(graph, tmp_path / "labelled.json")
    assert load_graph(tmp_path / "labelled.json").labels == ("a", "b", "c")


def test_edge_list_duplicate(tmp_path):
    path = tmp_path / "edges.txt"
    path.write_text("0 1\n1 0\n")
    with pytest.raises(GraphSchemaError):
        load_edge_list(path)


def test_center_node():
    assert center_node(lattice(15, 15)) == 112
    assert center_node(lattice(7, 7)) == 24


def test_center_node_needs_coords(path_graph):
    with pytest.raises(InputError):
        center_node(path_graph)
