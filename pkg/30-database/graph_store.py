"""
Graph file storage: JSON graph schema and whitespace-separated edge lists.

JSON schema (see 10-docs/01-file-formats.md):
    {"n": int, "edges": [[u, v], ...] with u < v,
     "coords": [[x, y], ...] (optional, length n),
     "labels": [str, ...] (optional, length n)}

Floats are written with repr(), which round-trips doubles exactly, so
load_graph(save_graph(g)) reproduces g bit for bit.
"""

import json
import logging
import numbers
from pathlib import Path
from typing import Any, Dict, List, Union

from errors import GraphSchemaError
from graph import Graph

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _is_int(value: Any) -> bool:
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def _is_real(value: Any) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def graph_from_dict(data: Dict[str, Any]) -> Graph:
    """
    Validate a decoded JSON object against the graph schema and build the Graph.

    Raises:
        GraphSchemaError: On the first record that breaks the schema
    """
    if not isinstance(data, dict):
        raise GraphSchemaError("top-level JSON value must be an object", type(data).__name__)
    if "n" not in data:
        raise GraphSchemaError("missing required key 'n'")
    n = data["n"]
    if not _is_int(n) or n < 0:
        raise GraphSchemaError("'n' must be a non-negative integer", n)

    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphSchemaError("'edges' must be a list", raw_edges)
    edges = []
    seen = set()
    for record in raw_edges:
        if not isinstance(record, list) or len(record) != 2 or not all(_is_int(x) for x in record):
            raise GraphSchemaError("edge must be a pair of integers", record)
        u, v = record
        if u == v:
            raise GraphSchemaError("self-loop", record)
        if u > v:
            raise GraphSchemaError("edge must be written with u < v", record)
        if not (0 <= u and v < n):
            raise GraphSchemaError(f"edge endpoint outside 0..{n - 1} (ids must be contiguous)", record)
        if (u, v) in seen:
            raise GraphSchemaError("duplicate edge", record)
        seen.add((u, v))
        edges.append((int(u), int(v)))

    coords = None
    if data.get("coords") is not None:
        raw_coords = data["coords"]
        if not isinstance(raw_coords, list) or len(raw_coords) != n:
            raise GraphSchemaError(f"'coords' must be a list of length {n}",
                                   f"length {len(raw_coords) if isinstance(raw_coords, list) else '?'}")
        coords = []
        for record in raw_coords:
            if not isinstance(record, list) or len(record) != 2 or not all(_is_real(x) for x in record):
                raise GraphSchemaError("coordinate must be a pair of reals", record)
            coords.append((float(record[0]), float(record[1])))

    labels = None
    if data.get("labels") is not None:
        raw_labels = data["labels"]
        if not isinstance(raw_labels, list) or len(raw_labels) != n:
            raise GraphSchemaError(f"'labels' must be a list of length {n}")
        labels = tuple(str(label) for label in raw_labels)

    return Graph(int(n), tuple(edges), None if coords is None else tuple(coords), labels)


def graph_to_dict(graph: Graph) -> Dict[str, Any]:
    """Encode a graph as a JSON-ready dictionary following the graph schema."""
    data: Dict[str, Any] = {
        "n": graph.node_count,
        "edges": [[u, v] for u, v in graph.edges],
    }
    if graph.coords is not None:
        data["coords"] = [[x, y] for x, y in graph.coords]
    if graph.labels is not None:
        data["labels"] = list(graph.labels)
    return data


def load_graph(path: PathLike) -> Graph:
    """
    Load a graph from a JSON graph file or a whitespace-separated edge-list file.

    Files ending in .json are parsed as JSON; anything else is read as an edge list.

    Args:
        path: Graph file path

    Returns:
        The loaded Graph

    Raises:
        FileNotFoundError: If the file does not exist
        GraphSchemaError: If the file content is malformed
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Graph file not found: {path}")
    if path.suffix.lower() != ".json":
        return load_edge_list(path)

    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        logger.error(f"Malformed graph file {path}: {e}")
        raise GraphSchemaError(f"malformed JSON in {path}: {e.msg} at line {e.lineno}") from e
    graph = graph_from_dict(data)
    logger.info(f"Loaded graph {path.name}: {graph.node_count} nodes, {graph.edge_count} edges")
    return graph


def save_graph(graph: Graph, path: PathLike) -> None:
    """Write a graph as JSON following the graph schema."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(graph_to_dict(graph), fh)
            fh.write("\n")
    except OSError as e:
        logger.error(f"Could not write graph file {path}: {e}")
        raise


def load_edge_list(path: PathLike) -> Graph:
    """
    Read a whitespace-separated edge list, one "u v" pair per line.

    Integer labels are used as node ids directly (n = largest id + 1). If any
    label is not an integer, all labels are mapped to dense ids in order of
    first appearance and kept on the graph as Graph.labels.
    """
    path = Path(path)
    pairs: List[List[str]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split()
            if len(parts) != 2:
                raise GraphSchemaError(f"line {line_no}: expected two labels", stripped)
            pairs.append(parts)

    def _as_int(label: str):
        try:
            value = int(label)
        except ValueError:
            return None
        return value if value >= 0 else None

    integer_ids = [(_as_int(a), _as_int(b)) for a, b in pairs]
    labels = None
    if all(a is not None and b is not None for a, b in integer_ids):
        edges = integer_ids
        n = 1 + max((max(a, b) for a, b in edges), default=-1)
    else:
        index: Dict[str, int] = {}
        for a, b in pairs:
            for label in (a, b):
                if label not in index:
                    index[label] = len(index)
        edges = [(index[a], index[b]) for a, b in pairs]
        n = len(index)
        labels = tuple(index.keys())

    seen = set()
    for (u, v), raw in zip(edges, pairs):
        if u == v:
            raise GraphSchemaError("self-loop", " ".join(raw))
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphSchemaError("duplicate edge", " ".join(raw))
        seen.add(key)

    graph = Graph(n, tuple(edges), None, labels)
    logger.info(f"Loaded edge list {path.name}: {graph.node_count} nodes, {graph.edge_count} edges")
    return graph
