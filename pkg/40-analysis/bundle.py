"""
Simple bundles between a source node and its destinations.

The leveled DAG keeps only the graph edges joining consecutive hierarchical
neighborhoods, oriented away from the source. The simple bundle towards a
destination at level L is the part of that DAG lying on some descending
source -> destination path. Bundles are kept as leveled DAGs; path counts
come from dynamic programming and explicit path lists only from the capped
enumeration.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

from errors import CapacityError, InputError, PathCountOverflowError
from graph import Graph
from hierarchy import HierarchyDecomposition, bfs_hierarchy
from settings import SBN_ENUM_CAP, SBN_MAX_PATH_COUNT

logger = logging.getLogger(__name__)

Link = Tuple[int, int]


@dataclass(frozen=True)
class LeveledDag:
    """Directed links u -> v with level(v) = level(u) + 1, sorted by (level, u, v)."""
    graph: Graph
    hierarchy: HierarchyDecomposition
    links: Tuple[Link, ...]

    @cached_property
    def predecessors(self) -> Dict[int, Tuple[int, ...]]:
        preds = defaultdict(list)
        for u, v in self.links:
            preds[v].append(u)
        return {v: tuple(us) for v, us in preds.items()}

    @cached_property
    def successors(self) -> Dict[int, Tuple[int, ...]]:
        succs = defaultdict(list)
        for u, v in self.links:
            succs[u].append(v)
        return {u: tuple(vs) for u, vs in succs.items()}


@dataclass(frozen=True)
class SimpleBundle:
    """
    All hierarchy-descending paths from source to destination, merged.

    level_nodes[h] holds the bundle nodes at level h (h = 0..L).
    level_links[h - 1] holds the links from level h - 1 to level h (h = 1..L).
    """
    source: int
    destination: int
    length: int
    level_nodes: Tuple[Tuple[int, ...], ...]
    level_links: Tuple[Tuple[Link, ...], ...]

    def links_at(self, h: int) -> Tuple[Link, ...]:
        """Links crossing the cut between level h - 1 and level h."""
        return self.level_links[h - 1]

    @property
    def links(self) -> Tuple[Link, ...]:
        return tuple(link for level in self.level_links for link in level)

    @property
    def link_counts(self) -> Tuple[int, ...]:
        return tuple(len(level) for level in self.level_links)

    @property
    def level_sizes(self) -> Tuple[int, ...]:
        return tuple(len(level) for level in self.level_nodes)

    @property
    def nodes(self) -> Tuple[int, ...]:
        return tuple(node for level in self.level_nodes for node in level)

    @cached_property
    def successors(self) -> Dict[int, Tuple[int, ...]]:
        succs = defaultdict(list)
        for u, v in self.links:
            succs[u].append(v)
        return {u: tuple(vs) for u, vs in succs.items()}

    def out_degree(self, node: int) -> int:
        return len(self.successors.get(node, ()))


def leveled_dag(graph: Graph, hierarchy: HierarchyDecomposition) -> LeveledDag:
    """
    Orient the edges joining consecutive frontiers away from the source.

    Edges between nodes of the same level are dropped.

    Raises:
        InputError: If the hierarchy was not produced from this graph
    """
    _check_hierarchy(graph, hierarchy)
    level = hierarchy.level
    links: List[Link] = []
    for h, frontier in enumerate(hierarchy.frontiers[:-1]):
        for u in frontier:
            for v in graph.adjacency[u]:
                if level.get(v) == h + 1:
                    links.append((u, v))
    return LeveledDag(graph=graph, hierarchy=hierarchy, links=tuple(links))


def _check_hierarchy(graph: Graph, hierarchy: HierarchyDecomposition) -> None:
    level = hierarchy.level
    try:
        graph.check_node(hierarchy.source)
        for node in level:
            graph.check_node(node)
    except InputError as e:
        raise InputError(f"Hierarchy does not belong to this graph: {e}") from e
    if level.get(hierarchy.source) != 0:
        raise InputError("Hierarchy does not belong to this graph: source is not at level 0")
    for u, v in graph.edges:
        hu, hv = level.get(u), level.get(v)
        if (hu is None) != (hv is None) or (hu is not None and abs(hu - hv) > 1):
            raise InputError(f"Hierarchy does not belong to this graph: edge ({u}, {v}) "
                             f"joins levels {hu} and {hv}")


def extract_bundle(dag: LeveledDag, destination: int) -> Optional[SimpleBundle]:
    """
    Extract the simple bundle from the DAG's source to destination.

    Args:
        dag: Leveled DAG of the source
        destination: Destination node id

    Returns:
        SimpleBundle, or None when destination is unreachable from the source

    Raises:
        InputError: If destination is invalid or equals the source
    """
    dag.graph.check_node(destination)
    source = dag.hierarchy.source
    if destination == source:
        raise InputError(f"Destination {destination} equals the source")
    length = dag.hierarchy.level.get(destination)
    if length is None:
        return None

    preds = dag.predecessors
    level_nodes: List[Tuple[int, ...]] = [()] * (length + 1)
    level_links: List[Tuple[Link, ...]] = [()] * length
    members = {destination}
    level_nodes[length] = (destination,)
    for h in range(length, 0, -1):
        links = sorted((u, v) for v in members for u in preds.get(v, ()))
        level_links[h - 1] = tuple(links)
        members = {u for u, _ in links}
        level_nodes[h - 1] = tuple(sorted(members))

    return SimpleBundle(source=source, destination=destination, length=length,
                        level_nodes=tuple(level_nodes), level_links=tuple(level_links))


def count_paths(bundle: SimpleBundle, max_count: int = SBN_MAX_PATH_COUNT) -> int:
    """
    Exact number of descending source -> destination paths in the bundle.

    The count at a node is the sum of the counts of its in-neighbors.

    Raises:
        PathCountOverflowError: If any partial count exceeds max_count
    """
    counts = {bundle.source: 1}
    for h, links in enumerate(bundle.level_links, start=1):
        for u, v in links:
            counts[v] = counts.get(v, 0) + counts[u]
            if counts[v] > max_count:
                raise PathCountOverflowError(
                    f"Path count of bundle {bundle.source}->{bundle.destination} exceeds "
                    f"{max_count} at level {h}")
    return counts[bundle.destination]


def enumerate_paths(bundle: SimpleBundle, cap: int = SBN_ENUM_CAP) -> List[Tuple[int, ...]]:
    """
    List every descending path of the bundle with an explicit stack.

    The first outgoing link of a node is followed and the other links are
    pushed onto the stack, so no recursion depth limit applies.

    Args:
        bundle: Simple bundle
        cap: Largest number of paths to produce

    Returns:
        Paths as node-id tuples, sorted lexicographically

    Raises:
        InputError: If cap < 1
        CapacityError: If the bundle holds more than cap paths
    """
    if cap < 1:
        raise InputError(f"Enumeration cap must be at least 1, got {cap}")
    succs = bundle.successors
    paths: List[Tuple[int, ...]] = []
    stack = [(bundle.source,)]
    while stack:
        path = stack.pop()
        node = path[-1]
        if node == bundle.destination:
            if len(paths) == cap:
                raise CapacityError(cap, len(paths) + 1)
            paths.append(path)
            continue
        for nxt in reversed(succs.get(node, ())):
            stack.append(path + (nxt,))
    paths.sort()
    return paths


def all_bundles(graph: Graph, source: int, length: int) -> List[SimpleBundle]:
    """
    Every simple bundle of the given length starting at source, ordered by destination.

    Returns an empty list when no node lies at that distance.
    """
    if length < 1:
        raise InputError(f"Bundle length must be at least 1, got {length}")
    hierarchy = bfs_hierarchy(graph, source)
    dag = leveled_dag(graph, hierarchy)
    return [extract_bundle(dag, destination) for destination in hierarchy.nodes_at(length)]


def bundle_to_dict(bundle: SimpleBundle) -> Dict[str, Any]:
    """JSON-ready description of a bundle's levels and links."""
    return {
        "source": bundle.source,
        "destination": bundle.destination,
        "length": bundle.length,
        "levels": [list(nodes) for nodes in bundle.level_nodes],
        "links": [[[u, v] for u, v in links] for links in bundle.level_links],
        "level_sizes": list(bundle.level_sizes),
        "link_counts": list(bundle.link_counts),
    }
