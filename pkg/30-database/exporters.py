"""
Writers and readers for analysis results.

Formats (documented in 10-docs/01-file-formats.md):
    - SBN GraphML: real "weight" attribute per edge, "x"/"y" per node when coordinates exist.
    - SBN CSV: columns a, b, weight.
    - Signature CSV: columns L, edge_count, mean, std (blank mean/std for empty SBNs).
    - Tables (hist, morphology, compare): pandas DataFrames as CSV.
    - JSON dumps and <stem>.meta.json run metadata.

Floats in CSV files are written with 17 significant digits and read back with
round-trip precision, so exported weights re-import bit for bit.
"""

import json
import logging
import platform
from pathlib import Path
from typing import Any, Dict, Iterable, Tuple, Union

import networkx as nx
import numpy as np
import pandas as pd

from errors import GraphSchemaError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"

PathLike = Union[str, Path]
Pair = Tuple[int, int]


def _prepare(path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_sbn_graphml(sbn, path: PathLike) -> None:
    """Write an SBN as GraphML: every base node, one weighted edge per SBN link."""
    path = _prepare(path)
    g = nx.Graph(length=sbn.length, stat=sbn.stat)
    for node in range(sbn.base.node_count):
        if sbn.base.coords is not None:
            x, y = sbn.base.coords[node]
            g.add_node(node, x=float(x), y=float(y))
        else:
            g.add_node(node)
    for (a, b), weight in sorted(sbn.weights.items()):
        g.add_edge(a, b, weight=float(weight))
    try:
        nx.write_graphml(g, str(path))
    except Exception as e:
        logger.error(f"Could not write GraphML {path}: {e}")
        raise


def read_sbn_graphml(path: PathLike) -> Dict[Pair, float]:
    """Weight map (a < b) of an exported SBN GraphML file."""
    try:
        g = nx.read_graphml(str(path), node_type=int)
    except Exception as e:
        logger.error(f"Could not read GraphML {path}: {e}")
        raise GraphSchemaError(f"unreadable GraphML file {path}: {e}") from e
    weights = {}
    for a, b, data in g.edges(data=True):
        if "weight" not in data:
            raise GraphSchemaError("edge without weight attribute", [a, b])
        weights[(min(a, b), max(a, b))] = float(data["weight"])
    return dict(sorted(weights.items()))


def sbn_frame(sbn) -> pd.DataFrame:
    rows = [(a, b, w) for (a, b), w in sorted(sbn.weights.items())]
    return pd.DataFrame(rows, columns=["a", "b", "weight"]).astype({"a": "int64", "b": "int64"})


def write_sbn_csv(sbn, path: PathLike) -> None:
    """Write an SBN edge list with columns a, b, weight."""
    write_table(sbn_frame(sbn), path)


def read_sbn_csv(path: PathLike) -> Dict[Pair, float]:
    """Weight map (a < b) of an exported SBN CSV file."""
    df = pd.read_csv(path, float_precision="round_trip")
    missing = {"a", "b", "weight"} - set(df.columns)
    if missing:
        raise GraphSchemaError(f"SBN CSV {path} lacks columns {sorted(missing)}")
    return {(int(a), int(b)): float(w) for a, b, w in df[["a", "b", "weight"]].itertuples(index=False)}


def signature_frame(rows: Iterable) -> pd.DataFrame:
    records = [{"L": row.length, "edge_count": row.edge_count,
                "mean": row.mean_weight, "std": row.std_weight} for row in rows]
    return pd.DataFrame(records, columns=["L", "edge_count", "mean", "std"])


def write_signature_csv(rows: Iterable, path: PathLike) -> None:
    """Write signature rows with columns L, edge_count, mean, std."""
    write_table(signature_frame(rows), path)


def write_table(df: pd.DataFrame, path: PathLike) -> None:
    """Write a DataFrame as CSV with round-trip float formatting."""
    path = _prepare(path)
    try:
        df.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    except OSError as e:
        logger.error(f"Could not write table {path}: {e}")
        raise


def _json_default(value: Any):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, (set, tuple)):
        return list(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def write_json(data: Any, path: PathLike) -> None:
    """Write a JSON document with sorted keys."""
    path = _prepare(path)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True, default=_json_default)
            fh.write("\n")
    except OSError as e:
        logger.error(f"Could not write JSON {path}: {e}")
        raise


def write_metadata(stem: PathLike, subcommand: str, config: Dict[str, Any], seed: int,
                   outputs: Iterable[PathLike]) -> Path:
    """
    Write <stem>.meta.json describing a run.

    No timestamps are recorded, so identical runs produce identical metadata.
    """
    meta = {
        "subcommand": subcommand,
        "config": config,
        "seed": seed,
        "outputs": sorted(Path(p).name for p in outputs),
        "versions": {
            "python": platform.python_version(),
            "numpy": np.__version__,
            "pandas": pd.__version__,
            "networkx": nx.__version__,
        },
    }
    path = Path(f"{stem}.meta.json")
    write_json(meta, path)
    return path
