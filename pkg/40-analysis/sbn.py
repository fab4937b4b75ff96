"""
Simple bundles networks (SBNs) and their signatures.

For a fixed bundle length L, the SBN links every pair of nodes at distance
exactly L. The weight of (a, b) is the average of one statistic (mean, min,
std or max of the level widths) over the two directed bundles a -> b and
b -> a, whose hierarchies generally differ. Each source needs one BFS, so an
all-pairs build costs N hierarchy decompositions. Sources are independent and
can be processed by a process or thread pool; results are merged by ordered
pair, so the output does not depend on the worker count.
"""

import logging
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import spearmanr

from bundle import SimpleBundle, extract_bundle, leveled_dag
from errors import InputError
from flow import STATS, BundleSummary, analyse_bundle
from graph import Graph
from hierarchy import bfs_hierarchy
from settings import SBN_THREADS, SBN_USE_PROCESSES

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class SbnGraph:
    """Weighted network over the base graph's nodes; weights[(a, b)] with a < b."""
    base: Graph
    length: int
    stat: str
    weights: Dict[Pair, float]

    @property
    def edge_count(self) -> int:
        return len(self.weights)

    def edge_list(self) -> List[Tuple[int, int, float]]:
        return [(a, b, w) for (a, b), w in sorted(self.weights.items())]


@dataclass(frozen=True)
class SignatureRow:
    """Mean and population std of the SBN weights at one length; None when the SBN is empty."""
    length: int
    edge_count: int
    mean_weight: Optional[float]
    std_weight: Optional[float]


def _check_stat(stat: str) -> None:
    if stat not in STATS:
        raise InputError(f"Unknown statistic {stat!r}; expected one of {', '.join(STATS)}")


def directed_stats(graph: Graph, source: int, length: int) -> Dict[int, BundleSummary]:
    """Summary of every bundle of the given length leaving source, keyed by destination."""
    hierarchy = bfs_hierarchy(graph, source)
    destinations = hierarchy.nodes_at(length)
    if not destinations:
        return {}
    dag = leveled_dag(graph, hierarchy)
    summaries = {}
    for destination in destinations:
        _, summary = analyse_bundle(extract_bundle(dag, destination))
        summaries[destination] = summary
    return summaries


def _source_task(args: Tuple[Graph, int, int]) -> Tuple[int, Dict[int, BundleSummary]]:
    graph, source, length = args
    return source, directed_stats(graph, source, length)


def directed_summaries(graph: Graph, length: int, threads: Optional[int] = None,
                       use_processes: Optional[bool] = None) -> Dict[Pair, BundleSummary]:
    """
    Summaries of all directed bundles of the given length, keyed by (source, destination).

    Args:
        graph: Base network
        length: Bundle length L (>= 1)
        threads: Worker count; 1 runs in the calling thread
        use_processes: Process pool if True, thread pool if False

    Returns:
        Dictionary ordered by (source, destination)
    """
    if length < 1:
        raise InputError(f"Bundle length must be at least 1, got {length}")
    threads = SBN_THREADS if threads is None else threads
    use_processes = SBN_USE_PROCESSES if use_processes is None else use_processes
    args_list = [(graph, source, length) for source in range(graph.node_count)]

    if threads <= 1 or graph.node_count < 2:
        results = [_source_task(args) for args in args_list]
    else:
        Executor = ProcessPoolExecutor if use_processes else ThreadPoolExecutor
        chunksize = max(1, len(args_list) // (threads * 4))
        with Executor(max_workers=threads) as ex:
            if use_processes:
                results = list(ex.map(_source_task, args_list, chunksize=chunksize))
            else:
                results = list(ex.map(_source_task, args_list))

    merged: Dict[Pair, BundleSummary] = {}
    for source, per_destination in sorted(results, key=lambda item: item[0]):
        for destination in sorted(per_destination):
            merged[(source, destination)] = per_destination[destination]
    logger.info(f"Analysed {len(merged)} directed bundles of length {length} "
                f"on {graph.node_count} nodes")
    return merged


def sbn_from_summaries(graph: Graph, length: int, stat: str,
                       summaries: Dict[Pair, BundleSummary]) -> SbnGraph:
    """Combine directed bundle summaries into symmetric SBN weights."""
    _check_stat(stat)
    weights: Dict[Pair, float] = {}
    for (a, b), forward in summaries.items():
        if a >= b:
            continue
        backward = summaries.get((b, a))
        if backward is None:
            raise InputError(f"Missing bundle {b}->{a}; summaries are not symmetric")
        weights[(a, b)] = (forward.stat(stat) + backward.stat(stat)) / 2.0
    return SbnGraph(base=graph, length=length, stat=stat, weights=weights)


def build_sbn(graph: Graph, length: int, stat: str = "mean", threads: Optional[int] = None,
              use_processes: Optional[bool] = None) -> SbnGraph:
    """
    Simple bundles network of the given length.

    Pairs whose distance differs from length receive no link.
    """
    _check_stat(stat)
    summaries = directed_summaries(graph, length, threads, use_processes)
    return sbn_from_summaries(graph, length, stat, summaries)


def signature_row(sbn: SbnGraph) -> SignatureRow:
    if not sbn.weights:
        return SignatureRow(length=sbn.length, edge_count=0, mean_weight=None, std_weight=None)
    values = np.fromiter(sbn.weights.values(), dtype=float)
    return SignatureRow(length=sbn.length, edge_count=len(values),
                        mean_weight=float(values.mean()), std_weight=float(values.std()))


def signature(graph: Graph, lengths: Sequence[int], stat: str = "mean", threads: Optional[int] = None,
              use_processes: Optional[bool] = None) -> List[SignatureRow]:
    """
    Mean and population standard deviation of the SBN weights for each length.

    A row is emitted for every requested length, including empty SBNs.
    """
    if not lengths:
        raise InputError("At least one bundle length is required")
    _check_stat(stat)
    return [signature_row(build_sbn(graph, length, stat, threads, use_processes)) for length in lengths]


def bundle_morphology(graph: Graph, source: int, lengths: Sequence[int]) -> Dict[int, List[SimpleBundle]]:
    """All bundles leaving source, grouped by length and ordered by destination."""
    hierarchy = bfs_hierarchy(graph, source)
    dag = leveled_dag(graph, hierarchy)
    morphology: Dict[int, List[SimpleBundle]] = {}
    for length in lengths:
        if length < 1:
            raise InputError(f"Bundle length must be at least 1, got {length}")
        morphology[length] = [extract_bundle(dag, destination) for destination in hierarchy.nodes_at(length)]
    return morphology


def widest_bundles(graph: Graph, length: int, stat: str = "mean", top: int = 1,
                   threads: Optional[int] = None) -> List[Tuple[int, int, BundleSummary]]:
    """
    Directed bundles with the largest value of a statistic.

    Ties are ordered by (source, destination).
    """
    _check_stat(stat)
    summaries = directed_summaries(graph, length, threads)
    ranked = sorted(summaries.items(), key=lambda item: (-item[1].stat(stat), item[0]))
    return [(a, b, summary) for (a, b), summary in ranked[:top]]


def weight_correlation(first: SbnGraph, second: SbnGraph) -> float:
    """Spearman rank correlation of two SBNs' weights over their common links."""
    common = sorted(set(first.weights) & set(second.weights))
    if len(common) < 2:
        raise InputError("Rank correlation needs at least two common links")
    x = [first.weights[pair] for pair in common]
    y = [second.weights[pair] for pair in common]
    rho, _ = spearmanr(x, y)
    return float(rho)
