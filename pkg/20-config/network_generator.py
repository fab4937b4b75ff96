"""
Generates the model networks studied with simple bundles.

Three families are supported: orthogonal lattices (open or toroidal),
lattices whose coordinates are slightly perturbed and then reconnected by
Delaunay triangulation, and Watts-Strogatz rewirings of a lattice. Every
random step draws from its own numpy Generator seeded with the caller's
seed (PCG64), so each result is a pure function of its parameters.

Run as a script to write the networks used by the standard experiments into
the data directory.
"""

import logging
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

sys.path.append(str(Path(__file__).parent.parent / "30-database"))
from delaunay import delaunay
from errors import InputError
from graph import Graph
from settings import SBN_OUT_DIR

logger = logging.getLogger(__name__)

Coord = Tuple[float, float]

GENERATOR_KINDS = ("lattice", "perturbed-delaunay", "ws")


@dataclass(frozen=True)
class GeneratorConfig:
    """
    Parameters of one generation call.

    Attributes:
        kind: One of lattice, perturbed-delaunay, ws
        rows: Lattice rows (>= 2)
        cols: Lattice columns (>= 2)
        periodic: Toroidal wrap-around of the lattice
        delta: Half-range of the uniform coordinate perturbation
        rewire_p: Watts-Strogatz rewiring probability
        seed: Seed of the random stream (64-bit unsigned)
    """
    kind: str = "lattice"
    rows: int = 7
    cols: int = 7
    periodic: bool = False
    delta: float = 0.0
    rewire_p: float = 0.0
    seed: int = 0

    def validate(self) -> None:
        if self.kind not in GENERATOR_KINDS:
            raise InputError(f"Unknown generator {self.kind!r}; expected one of {', '.join(GENERATOR_KINDS)}")
        if self.delta < 0:
            raise InputError(f"delta must be non-negative, got {self.delta}")
        if not (0.0 <= self.rewire_p <= 1.0):
            raise InputError(f"rewiring probability must lie in [0, 1], got {self.rewire_p}")
        if self.delta != 0 and self.rewire_p != 0:
            raise InputError("delta and rewire_p cannot both be nonzero in one generation call")
        if not (0 <= self.seed < 2**64):
            raise InputError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def make_rng(seed: int) -> np.random.Generator:
    """Independent PCG64 stream for one generation call."""
    return np.random.Generator(np.random.PCG64(seed))


def lattice(rows: int, cols: int, periodic: bool = False) -> Graph:
    """
    Orthogonal lattice; node (r, c) has id r * cols + c and coordinates (c, r).

    Args:
        rows: Number of rows (>= 2; >= 3 when periodic)
        cols: Number of columns (>= 2; >= 3 when periodic)
        periodic: Wrap rows and columns around (torus)

    Returns:
        Graph with rows*(cols-1) + cols*(rows-1) edges, or 2*rows*cols when periodic

    Raises:
        InputError: If the dimensions are too small
    """
    if rows < 2 or cols < 2:
        raise InputError(f"Lattice needs at least 2 rows and 2 columns, got {rows}x{cols}")
    if periodic and (rows < 3 or cols < 3):
        # with 2 rows the wrap-around edge would duplicate the inner one
        raise InputError(f"Periodic lattice needs at least 3 rows and 3 columns, got {rows}x{cols}")

    edges: List[Tuple[int, int]] = []
    for r in range(rows):
        for c in range(cols):
            node = r * cols + c
            if c + 1 < cols:
                edges.append((node, node + 1))
            elif periodic:
                edges.append((r * cols, node))
            if r + 1 < rows:
                edges.append((node, node + cols))
            elif periodic:
                edges.append((c, node))
    coords = tuple((float(c), float(r)) for r in range(rows) for c in range(cols))
    return Graph(rows * cols, tuple(edges), coords)


def perturb_coords(coords: Sequence[Sequence[float]], delta: float, seed: int) -> List[Coord]:
    """
    Offset every coordinate component by an independent uniform draw in [-delta, delta].

    delta = 0 returns the coordinates unchanged.
    """
    if delta < 0:
        raise InputError(f"delta must be non-negative, got {delta}")
    base = np.asarray(coords, dtype=float).reshape(-1, 2)
    if delta == 0:
        return [(float(x), float(y)) for x, y in base]
    offsets = make_rng(seed).uniform(-delta, delta, size=base.shape)
    moved = base + offsets
    return [(float(x), float(y)) for x, y in moved]


def perturbed_delaunay(rows: int, cols: int, delta: float, seed: int) -> Graph:
    """Lattice coordinates perturbed by delta and reconnected by Delaunay triangulation."""
    base = lattice(rows, cols, periodic=False)
    coords = perturb_coords(base.coords, delta, seed)
    return delaunay(coords)


def ws_rewire(graph: Graph, p: float, seed: int) -> Graph:
    """
    Watts-Strogatz rewiring of an existing graph.

    Edges are visited once, in ascending (u, v) order. Each is selected with
    probability p; a selected edge keeps u (the smaller id) and replaces v by
    a node drawn uniformly among those that are neither u nor a current
    neighbor of u. Edge count and simplicity are preserved.

    Args:
        graph: Graph to rewire
        p: Rewiring probability in [0, 1]
        seed: Seed of the random stream

    Returns:
        Rewired graph with the same nodes and coordinates
    """
    if not (0.0 <= p <= 1.0):
        raise InputError(f"rewiring probability must lie in [0, 1], got {p}")
    rng = make_rng(seed)
    n = graph.node_count
    adjacency = [set(neigh) for neigh in graph.adjacency]
    rewired = 0
    for u, v in graph.edges:
        if rng.random() >= p:
            continue
        candidates = [w for w in range(n) if w != u and w not in adjacency[u]]
        if not candidates:
            logger.warning(f"Node {u} is adjacent to every other node; edge ({u}, {v}) left unrewired")
            continue
        w = candidates[int(rng.integers(len(candidates)))]
        adjacency[u].discard(v)
        adjacency[v].discard(u)
        adjacency[u].add(w)
        adjacency[w].add(u)
        rewired += 1

    logger.info(f"Rewired {rewired} of {graph.edge_count} edges (p={p}, seed={seed})")
    edges = [(u, w) for u in range(n) for w in adjacency[u] if u < w]
    return graph.with_edges(edges)


def generate(config: GeneratorConfig) -> Graph:
    """
    Build the network described by a generator configuration.

    Raises:
        InputError: If the configuration is invalid
    """
    config.validate()
    if config.kind == "lattice":
        graph = lattice(config.rows, config.cols, config.periodic)
        if config.delta:
            graph = Graph(graph.node_count, graph.edges,
                          tuple(perturb_coords(graph.coords, config.delta, config.seed)))
        return graph
    if config.kind == "perturbed-delaunay":
        if config.periodic:
            raise InputError("perturbed-delaunay networks are built from open lattices only")
        return perturbed_delaunay(config.rows, config.cols, config.delta, config.seed)
    base = lattice(config.rows, config.cols, config.periodic)
    return ws_rewire(base, config.rewire_p, config.seed)


def main():
    """
    Write the networks of the standard experiments into the data directory.
    """
    from graph_store import save_graph

    out_dir = Path(SBN_OUT_DIR) / "networks"
    configs = {
        "lattice_15x15": GeneratorConfig(kind="lattice", rows=15, cols=15),
        "delaunay_15x15_d1e-10": GeneratorConfig(kind="perturbed-delaunay", rows=15, cols=15, delta=1e-10, seed=7),
        "delaunay_15x15_d1e-1": GeneratorConfig(kind="perturbed-delaunay", rows=15, cols=15, delta=0.1, seed=7),
        "ws_15x15_p0.02": GeneratorConfig(kind="ws", rows=15, cols=15, rewire_p=0.02, seed=7),
        "lattice_7x7": GeneratorConfig(kind="lattice", rows=7, cols=7),
        "delaunay_7x7_d1e-12": GeneratorConfig(kind="perturbed-delaunay", rows=7, cols=7, delta=1e-12, seed=7),
        "ws_7x7_p0.05": GeneratorConfig(kind="ws", rows=7, cols=7, rewire_p=0.05, seed=7),
        "ws_torus_7x7_p0.05": GeneratorConfig(kind="ws", rows=7, cols=7, periodic=True, rewire_p=0.05, seed=7),
    }
    for name, config in configs.items():
        graph = generate(config)
        save_graph(graph, out_dir / f"{name}.json")
        print(f"{name}: {graph.node_count} nodes, {graph.edge_count} edges")


if __name__ == "__main__":
    main()
