"""
Hierarchical neighborhoods around a source node.

The nodes at topological distance h from the source form the h-th frontier.
Unreachable nodes receive no level at all.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HierarchyDecomposition:
    """BFS level of every reachable node and the node list of each level, sorted by id."""
    source: int
    level: Dict[int, int]
    frontiers: Tuple[Tuple[int, ...], ...]

    @property
    def depth(self) -> int:
        """Largest level, i.e. the eccentricity of the source in its component."""
        return len(self.frontiers) - 1

    def level_of(self, node: int) -> Optional[int]:
        return self.level.get(node)

    def nodes_at(self, h: int) -> Tuple[int, ...]:
        if 0 <= h < len(self.frontiers):
            return self.frontiers[h]
        return ()

    @property
    def reachable_count(self) -> int:
        return len(self.level)


def bfs_hierarchy(graph: Graph, source: int) -> HierarchyDecomposition:
    """
    Split the nodes reachable from source into levels of equal BFS distance.

    Args:
        graph: Undirected graph
        source: Source node id

    Returns:
        HierarchyDecomposition with frontiers sorted ascending by node id

    Raises:
        InputError: If source is not a node of the graph
    """
    graph.check_node(source)
    level = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        next_level = level[u] + 1
        for v in graph.adjacency[u]:
            if v not in level:
                level[v] = next_level
                queue.append(v)

    depth = max(level.values())
    buckets = [[] for _ in range(depth + 1)]
    for node, h in level.items():
        buckets[h].append(node)
    frontiers = tuple(tuple(sorted(bucket)) for bucket in buckets)
    return HierarchyDecomposition(source=source, level=level, frontiers=frontiers)
