"""Exhaustive ground truth for small inputs.

These are the slow, obviously-correct counterparts the tests hold the
fast implementations against: full subset enumeration for the
optimizer and full simple-path enumeration for overlap. Both refuse
inputs past a hard size guard; an oracle that silently samples is not
an oracle.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterable

from .campaign import CampaignSpec
from .constraints import build_cost_model
from .ga import Chromosome, InfeasibleError
from .network import WebsiteNetwork
from .objective import fitness, site_weights
from .overlap import OverlapMatrix, SymmetrizedGraph

MAX_SUBSETS = 1_000_000
MAX_PATH_NODES = 12


def exhaustive_optimize(
    net: WebsiteNetwork,
    matrix: OverlapMatrix,
    feasible: Iterable[str],
    campaign: CampaignSpec,
) -> tuple[Chromosome, float]:
    """Evaluate every m-subset; ties go to the lexicographically smallest."""
    pool = sorted(set(feasible))
    m = campaign.num_sites
    if len(pool) < m:
        raise InfeasibleError(len(pool), m)
    total = comb(len(pool), m)
    if total > MAX_SUBSETS:
        raise ValueError(
            f"{total} candidate subsets exceed the enumeration limit of {MAX_SUBSETS}; "
            "use the genetic optimizer instead"
        )
    cost_model = build_cost_model(net)
    weights = site_weights(net, pool, campaign, cost_model)
    best: Chromosome | None = None
    best_fitness = float("-inf")
    # combinations() yields in lexicographic order, so strict > keeps the
    # lexicographically smallest among equals.
    for candidate in combinations(pool, m):
        value = fitness(candidate, matrix, weights)
        if value > best_fitness:
            best = candidate
            best_fitness = value
    assert best is not None
    return best, best_fitness


def enumerate_path_overlap(graph: SymmetrizedGraph, source: str, target: str) -> float:
    """Max product of weights over all simple paths, by trying every one.

    Weights are in (0, 1], so extending a prefix never raises its
    product; a prefix already at or below the best finished path is
    abandoned. That bound discards no maximum, it only makes dense
    graphs enumerable.
    """
    if len(graph) > MAX_PATH_NODES:
        raise ValueError(
            f"path enumeration is limited to {MAX_PATH_NODES} nodes, got {len(graph)}"
        )
    for node_id in (source, target):
        if node_id not in graph:
            raise ValueError(f"unknown node id {node_id!r}")
    if source == target:
        return 1.0
    best = 0.0
    visited = {source}

    def walk(node: str, product: float) -> None:
        nonlocal best
        for neighbor, weight in sorted(graph[node].items()):
            if neighbor in visited:
                continue
            extended = product * weight
            if extended <= best:
                continue
            if neighbor == target:
                best = extended
                continue
            visited.add(neighbor)
            walk(neighbor, extended)
            visited.discard(neighbor)

    walk(source, 1.0)
    return best
