"""
Undirected simple graph used by every analysis.

Node ids are the dense integers 0..node_count-1. Edges are stored once, as
(u, v) pairs with u < v, sorted ascending. The object is immutable after
construction, so the same instance can be shared by concurrent analyses.
"""

import logging
import numbers
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from errors import GraphSchemaError, InputError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
Coord = Tuple[float, float]


@dataclass(frozen=True)
class Graph:
    """
    Undirected graph with optional 2D node coordinates and optional node labels.

    Attributes:
        node_count: Number of nodes; ids are 0..node_count-1
        edges: Sorted tuple of (u, v) pairs with u < v
        coords: Optional (x, y) per node
        labels: Optional external label per node (edge-list files with non-integer labels)
    """
    node_count: int
    edges: Tuple[Edge, ...]
    coords: Optional[Tuple[Coord, ...]] = None
    labels: Optional[Tuple[str, ...]] = None
    adjacency: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.node_count, int) or self.node_count < 0:
            raise GraphSchemaError("node count must be a non-negative integer", self.node_count)

        normalized = []
        seen = set()
        for edge in self.edges:
            u, v = int(edge[0]), int(edge[1])
            if u == v:
                raise GraphSchemaError("self-loop", [u, v])
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise GraphSchemaError(f"edge endpoint outside 0..{self.node_count - 1}", [u, v])
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphSchemaError("duplicate edge", list(key))
            seen.add(key)
            normalized.append(key)
        normalized.sort()
        object.__setattr__(self, 'edges', tuple(normalized))

        if self.coords is not None:
            if len(self.coords) != self.node_count:
                raise GraphSchemaError(
                    f"coords has {len(self.coords)} entries, expected {self.node_count}")
            object.__setattr__(
                self, 'coords', tuple((float(x), float(y)) for x, y in self.coords))

        if self.labels is not None:
            if len(self.labels) != self.node_count:
                raise GraphSchemaError(
                    f"labels has {len(self.labels)} entries, expected {self.node_count}")
            object.__setattr__(self, 'labels', tuple(str(label) for label in self.labels))

        neighbors: List[List[int]] = [[] for _ in range(self.node_count)]
        for u, v in normalized:
            neighbors[u].append(v)
            neighbors[v].append(u)
        object.__setattr__(self, 'adjacency', tuple(tuple(sorted(n)) for n in neighbors))

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[Sequence[int]],
                   coords: Optional[Iterable[Sequence[float]]] = None) -> "Graph":
        """Build a graph from any iterable of edge pairs and coordinates."""
        edge_tuple = tuple((int(e[0]), int(e[1])) for e in edges)
        coord_tuple = None if coords is None else tuple((c[0], c[1]) for c in coords)
        return cls(node_count, edge_tuple, coord_tuple)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def check_node(self, node: int) -> None:
        """Raise InputError unless node is a valid id."""
        if isinstance(node, bool) or not isinstance(node, numbers.Integral) \
                or not (0 <= node < self.node_count):
            raise InputError(f"Invalid node id {node!r}; graph has nodes 0..{self.node_count - 1}")

    def neighbors(self, node: int) -> Tuple[int, ...]:
        return self.adjacency[node]

    def degree(self, node: int) -> int:
        return len(self.adjacency[node])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edge_list(self) -> List[Edge]:
        return list(self.edges)

    def with_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        """Copy of this graph (same nodes, coords and labels) with a different edge set."""
        return Graph(self.node_count, tuple((int(e[0]), int(e[1])) for e in edges),
                     self.coords, self.labels)


def center_node(graph: Graph) -> int:
    """
    Node nearest the centroid of the node coordinates.

    Ties go to the smallest id. For odd-sized lattices this is the geometric
    centre, e.g. id 112 of a 15x15 lattice.

    Raises:
        InputError: If the graph has no coordinates
    """
    if graph.coords is None or graph.node_count == 0:
        raise InputError("Graph has no coordinates; pass an explicit --source")
    n = graph.node_count
    cx = sum(x for x, _ in graph.coords) / n
    cy = sum(y for _, y in graph.coords) / n
    best, best_d2 = 0, float('inf')
    for node, (x, y) in enumerate(graph.coords):
        d2 = (x - cx) ** 2 + (y - cy) ** 2
        if d2 < best_d2:
            best, best_d2 = node, d2
    return best
