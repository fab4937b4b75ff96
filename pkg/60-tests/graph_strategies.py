"""
Hypothesis strategies and brute-force oracles shared by the property tests.
"""

from itertools import combinations

import networkx as nx
from hypothesis import strategies as st

from graph import Graph


@st.composite
def graphs(draw, min_nodes=2, max_nodes=20, density=2):
    """Random simple graphs with up to density * n edges."""
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = list(combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=density * n))
    return Graph(n, tuple(edges))


def to_networkx(graph: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(graph.node_count))
    g.add_edges_from(graph.edges)
    return g


def shortest_path_links(graph: Graph, source: int, destination: int):
    """Directed links on any shortest source -> destination path, and the path count."""
    links = set()
    count = 0
    for path in nx.all_shortest_paths(to_networkx(graph), source, destination):
        count += 1
        links.update(zip(path[:-1], path[1:]))
    return links, count
