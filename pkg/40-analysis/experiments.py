"""
Table builders for the bundle experiments.

Each function turns analysis results into a pandas DataFrame (or a JSON-ready
dictionary) with a fixed column order, so the command line only has to pick
an output format. Rows are always ordered by (L, destination).
"""

import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from bundle import bundle_to_dict, enumerate_paths, extract_bundle, leveled_dag
from errors import CapacityError, InputError
from flow import analyse_bundle, transition_matrix
from graph import Graph
from hierarchy import bfs_hierarchy
from sbn import bundle_morphology
from settings import SBN_ENUM_CAP

logger = logging.getLogger(__name__)

BUNDLE_COLUMNS = ["L", "destination", "path_count", "mean_width", "std_width", "min_width", "max_width"]
AGGREGATE_COLUMNS = [
    "L", "bundles",
    "path_count_mean", "path_count_std",
    "mean_width_mean", "mean_width_std",
    "min_width_mean", "min_width_std",
]
COMPARE_COLUMNS = ["L", "bundles_a", "bundles_b", "path_counts_differ", "mean_width_a", "mean_width_b"]
MORPHOLOGY_COLUMNS = ["L", "destination", "path_count", "level_sizes", "link_counts", "mean_width"]


def _check_lengths(lengths: Sequence[int]) -> List[int]:
    if not lengths:
        raise InputError("At least one bundle length is required")
    for length in lengths:
        if length < 1:
            raise InputError(f"Bundle length must be at least 1, got {length}")
    return list(lengths)


def bundle_table(graph: Graph, source: int, lengths: Sequence[int]) -> pd.DataFrame:
    """
    One row per bundle leaving source, for every requested length.

    Args:
        graph: Base network
        source: Source node
        lengths: Bundle lengths L

    Returns:
        DataFrame with columns L, destination, path_count, mean_width, std_width, min_width, max_width
    """
    lengths = _check_lengths(lengths)
    hierarchy = bfs_hierarchy(graph, source)
    dag = leveled_dag(graph, hierarchy)
    records = []
    for length in lengths:
        for destination in hierarchy.nodes_at(length):
            _, summary = analyse_bundle(extract_bundle(dag, destination))
            records.append({
                "L": length,
                "destination": destination,
                "path_count": summary.path_count,
                "mean_width": summary.mean_width,
                "std_width": summary.std_width,
                "min_width": summary.min_width,
                "max_width": summary.max_width,
            })
    logger.info(f"Collected {len(records)} bundles from source {source} for L in {lengths}")
    df = pd.DataFrame(records, columns=BUNDLE_COLUMNS)
    return df.astype({"L": "int64", "destination": "int64", "path_count": "int64"})


def aggregate_table(table: pd.DataFrame, lengths: Optional[Sequence[int]] = None) -> pd.DataFrame:
    """
    Per-L mean and population standard deviation of path_count, mean_width and min_width.

    Every length in lengths gets a row; lengths without bundles have a zero
    count and blank statistics.
    """
    if lengths is None:
        lengths = sorted(table["L"].unique())
    lengths = _check_lengths([int(length) for length in lengths])
    columns = ["path_count", "mean_width", "min_width"]
    grouped = table.groupby("L")[columns]
    means = grouped.mean()
    stds = grouped.std(ddof=0)
    counts = table.groupby("L").size()

    records = []
    for length in lengths:
        row: Dict[str, Any] = {"L": length, "bundles": int(counts.get(length, 0))}
        for column in columns:
            present = length in means.index
            row[f"{column}_mean"] = float(means.loc[length, column]) if present else np.nan
            row[f"{column}_std"] = float(stds.loc[length, column]) if present else np.nan
        records.append(row)
    return pd.DataFrame(records, columns=AGGREGATE_COLUMNS)


def compare_distributions(table_a: pd.DataFrame, table_b: pd.DataFrame,
                          lengths: Optional[Sequence[int]] = None) -> pd.DataFrame:
    """
    Compare two bundle tables length by length.

    path_counts_differ is True when the multisets of path counts are not
    identical; mean_width_a / mean_width_b are the average mu_E of each side.
    """
    if lengths is None:
        lengths = sorted(set(table_a["L"]) | set(table_b["L"]))
    records = []
    for length in _check_lengths([int(length) for length in lengths]):
        side_a = table_a[table_a["L"] == length]
        side_b = table_b[table_b["L"] == length]
        counts_a = sorted(int(c) for c in side_a["path_count"])
        counts_b = sorted(int(c) for c in side_b["path_count"])
        records.append({
            "L": length,
            "bundles_a": len(side_a),
            "bundles_b": len(side_b),
            "path_counts_differ": counts_a != counts_b,
            "mean_width_a": float(side_a["mean_width"].mean()) if len(side_a) else np.nan,
            "mean_width_b": float(side_b["mean_width"].mean()) if len(side_b) else np.nan,
        })
    return pd.DataFrame(records, columns=COMPARE_COLUMNS)


def morphology_table(graph: Graph, source: int, lengths: Sequence[int]) -> pd.DataFrame:
    """Level sizes and link counts of every bundle leaving source, as dash-joined strings."""
    morphology = bundle_morphology(graph, source, _check_lengths(lengths))
    records = []
    for length, bundles in morphology.items():
        for bundle in bundles:
            _, summary = analyse_bundle(bundle)
            records.append({
                "L": length,
                "destination": bundle.destination,
                "path_count": summary.path_count,
                "level_sizes": "-".join(str(size) for size in bundle.level_sizes),
                "link_counts": "-".join(str(count) for count in bundle.link_counts),
                "mean_width": summary.mean_width,
            })
    return pd.DataFrame(records, columns=MORPHOLOGY_COLUMNS)


def morphology_dump(graph: Graph, source: int, lengths: Sequence[int]) -> Dict[str, Any]:
    morphology = bundle_morphology(graph, source, _check_lengths(lengths))
    return {
        "source": source,
        "lengths": {str(length): [bundle_to_dict(b) for b in bundles] for length, bundles in morphology.items()},
    }


def bundle_dump(graph: Graph, source: int, destination: int, with_paths: bool = False,
                cap: int = SBN_ENUM_CAP) -> Optional[Dict[str, Any]]:
    """
    Full description of one bundle: levels, links, transitions, flows, widths and summary.

    Args:
        graph: Base network
        source: Source node
        destination: Destination node
        with_paths: Also list the explicit paths
        cap: Enumeration cap; when exceeded the paths are omitted and
            "paths_truncated" is set

    Returns:
        JSON-ready dictionary, or None when no bundle exists (unreachable destination)
    """
    hierarchy = bfs_hierarchy(graph, source)
    bundle = extract_bundle(leveled_dag(graph, hierarchy), destination)
    if bundle is None:
        return None
    flow, summary = analyse_bundle(bundle)
    T = transition_matrix(bundle)
    dump = bundle_to_dict(bundle)
    dump["transitions"] = [[u, v, T[(u, v)]] for u, v in bundle.links]
    dump["node_flow"] = [[node, flow.node_flow[node]] for node in sorted(flow.node_flow)]
    dump["link_flow"] = [[u, v, flow.link_flow[(u, v)]] for u, v in bundle.links]
    dump["widths"] = list(flow.widths)
    dump["summary"] = {
        "path_count": summary.path_count,
        "mean_width": summary.mean_width,
        "std_width": summary.std_width,
        "min_width": summary.min_width,
        "max_width": summary.max_width,
    }
    if with_paths:
        try:
            dump["paths"] = [list(path) for path in enumerate_paths(bundle, cap)]
        except CapacityError as e:
            logger.warning(f"Paths omitted from dump: {e}")
            dump["paths_truncated"] = True
    return dump
