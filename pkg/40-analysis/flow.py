"""
Equilibrium diffusion flow on a simple bundle and its effective widths.

Every bundle node splits the flow it receives evenly over its k outgoing
bundle links (probability 1/k each). One unit of flow leaves the source and
is propagated level by level; the flow on link i -> j is phi(i) * T(i -> j).
The effective width of level h is the exponential Shannon entropy of the link
flows crossing the cut between levels h - 1 and h, a number between 1 (all
flow on one link) and the number of links in the cut (uniform flow).
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np
from scipy.stats import entropy

from bundle import Link, SimpleBundle, count_paths, enumerate_paths
from errors import FlowConservationError, InputError, WidthBoundError
from settings import EQUALITY_TOLERANCE, FLOW_TOLERANCE, SBN_ENUM_CAP

logger = logging.getLogger(__name__)

STATS = ("mean", "min", "std", "max")


@dataclass(frozen=True)
class TransitionMatrix:
    """Transition probability of every bundle link, T(u -> v) = 1 / outdegree(u)."""
    probs: Dict[Link, float]

    def __getitem__(self, link: Link) -> float:
        return self.probs[link]

    def row_sums(self) -> Dict[int, float]:
        sums: Dict[int, float] = {}
        for (u, _), p in self.probs.items():
            sums[u] = sums.get(u, 0.0) + p
        return sums


@dataclass(frozen=True)
class FlowResult:
    """Node flows, link flows and per-level effective widths (widths[h - 1] is E_h)."""
    node_flow: Dict[int, float]
    link_flow: Dict[Link, float]
    widths: Tuple[float, ...]


@dataclass(frozen=True)
class BundleSummary:
    path_count: int
    mean_width: float
    std_width: float
    min_width: float
    max_width: float

    def stat(self, name: str) -> float:
        """Value of one of the named statistics: mean, min, std or max."""
        if name == "mean":
            return self.mean_width
        if name == "min":
            return self.min_width
        if name == "std":
            return self.std_width
        if name == "max":
            return self.max_width
        raise InputError(f"Unknown statistic {name!r}; expected one of {', '.join(STATS)}")


def exp_entropy(p: Sequence[float]) -> float:
    """
    Exponential Shannon entropy exp(-sum p_i ln p_i), the effective number of choices.

    Uses 0 ln 0 = 0. The result lies in [1, len(p)]; rounding overshoot up to
    EQUALITY_TOLERANCE * len(p) is clamped back to the bounds.

    Raises:
        InputError: If p is empty, has negative entries or does not sum to 1 within 1e-9
        WidthBoundError: If the value leaves [1, len(p)] by more than the tolerance
    """
    probs = np.asarray(p, dtype=float)
    if probs.size == 0:
        raise InputError("Probability list is empty")
    if np.any(probs < 0):
        raise InputError(f"Negative probability in {probs.tolist()}")
    total = float(probs.sum())
    if abs(total - 1.0) > FLOW_TOLERANCE:
        raise InputError(f"Probabilities sum to {total!r}, expected 1")
    value = float(np.exp(entropy(probs)))
    upper = float(probs.size)
    slack = EQUALITY_TOLERANCE * upper
    if value < 1.0 - slack or value > upper + slack:
        raise WidthBoundError(f"Effective width {value!r} outside [1, {probs.size}]")
    return float(np.clip(value, 1.0, upper))


def transition_matrix(bundle: SimpleBundle) -> TransitionMatrix:
    """Uniform split of each node's flow over its outgoing bundle links."""
    succs = bundle.successors
    probs = {}
    for u, v in bundle.links:
        probs[(u, v)] = 1.0 / len(succs[u])
    return TransitionMatrix(probs)


def equilibrium_flow(bundle: SimpleBundle, T: TransitionMatrix) -> FlowResult:
    """
    Propagate one unit of flow from the source through the bundle levels.

    Raises:
        FlowConservationError: If the flow crossing a level cut differs from 1 by more than 1e-9
    """
    node_flow: Dict[int, float] = {bundle.source: 1.0}
    link_flow: Dict[Link, float] = {}
    widths = []
    for h, links in enumerate(bundle.level_links, start=1):
        level_flows = []
        for u, v in links:
            omega = node_flow[u] * T[(u, v)]
            link_flow[(u, v)] = omega
            node_flow[v] = node_flow.get(v, 0.0) + omega
            level_flows.append(omega)
        cut = math.fsum(level_flows)
        if abs(cut - 1.0) > FLOW_TOLERANCE:
            logger.error(f"Flow across level {h} of bundle {bundle.source}->{bundle.destination} is {cut!r}")
            raise FlowConservationError(
                f"Flow across level {h} of bundle {bundle.source}->{bundle.destination} sums to {cut!r}")
        widths.append(exp_entropy(level_flows))
    return FlowResult(node_flow=node_flow, link_flow=link_flow, widths=tuple(widths))


def summarize(bundle: SimpleBundle, flow: FlowResult) -> BundleSummary:
    """Mean, population standard deviation, minimum and maximum of the level widths."""
    widths = np.asarray(flow.widths, dtype=float)
    return BundleSummary(
        path_count=count_paths(bundle),
        mean_width=float(widths.mean()),
        std_width=float(widths.std()),
        min_width=float(widths.min()),
        max_width=float(widths.max()),
    )


def analyse_bundle(bundle: SimpleBundle) -> Tuple[FlowResult, BundleSummary]:
    """Transition matrix, equilibrium flow and summary of one bundle."""
    flow = equilibrium_flow(bundle, transition_matrix(bundle))
    return flow, summarize(bundle, flow)


def path_mass_link_flow(bundle: SimpleBundle, cap: int = SBN_ENUM_CAP) -> Dict[Link, float]:
    """
    Link flows obtained by summing the probability mass of every enumerated path.

    The mass of a path is the product of its transition probabilities. The
    result equals the propagated link flows and serves as their cross-check.
    """
    T = transition_matrix(bundle)
    flows: Dict[Link, float] = {link: 0.0 for link in bundle.links}
    for path in enumerate_paths(bundle, cap):
        hops = list(zip(path[:-1], path[1:]))
        mass = math.prod(T[hop] for hop in hops)
        for hop in hops:
            flows[hop] += mass
    return flows
