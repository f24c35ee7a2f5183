"""Fitness: overlap-discounted exposures of a site subset, plus plan metrics.

The score of a selection is the sum of per-site weights minus, for each
unordered pair, the pair's overlap times the smaller weight: the
overlapping audience cannot exceed the smaller side, so that product
bounds what double counting would inflate. Weights are reach
percentages in reach mode and purchased impressions in impressions
mode; the formula never changes, only what the weights mean.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .campaign import MODE_REACH, CampaignSpec
from .constraints import CostModel, demographic_filter, impressions_per_site
from .network import WebsiteNetwork
from .overlap import OverlapMatrix


def site_weights(
    net: WebsiteNetwork,
    ids: Iterable[str],
    campaign: CampaignSpec,
    cost_model: CostModel,
) -> dict[str, float]:
    """Per-site objective weight for the campaign's mode.

    Reach mode weights a site by its reach percentage; impressions mode
    by the impressions an equal budget share buys at the site's cpm.
    """
    weights: dict[str, float] = {}
    for node_id in sorted(set(ids)):
        if campaign.objective_mode == MODE_REACH:
            reach = net.get(node_id).reach_pct
            if reach is None:
                raise ValueError(f"node {node_id!r} has no reach; prune the network first")
            weights[node_id] = reach
        else:
            weights[node_id] = impressions_per_site(
                campaign.budget_usd, campaign.num_sites, cost_model[node_id]
            )
    return weights


def fitness(
    selection: Iterable[str], matrix: OverlapMatrix, weights: Mapping[str, float]
) -> float:
    """Sum of weights minus min-weighted pairwise overlap deductions.

    Order-insensitive; may go negative for dense-overlap selections
    (the optimizer only needs a consistent ordering, so no clamping).
    """
    ids = sorted(set(selection))
    for node_id in ids:
        if node_id not in weights:
            raise ValueError(f"no weight for node id {node_id!r}")
    gross = sum(weights[node_id] for node_id in ids)
    deduction = sum(
        matrix.value(i, j) * min(weights[i], weights[j]) for i, j in combinations(ids, 2)
    )
    return gross - deduction


@dataclass(frozen=True)
class ScoreBreakdown:
    """The three headline numbers for one selection."""

    gross_exposures: float
    overlap_deduction: float
    net_score: float


@dataclass(frozen=True)
class PlanMetrics:
    """Human-facing summary: the selection's numbers against the naive baseline.

    The baseline is the top-m-by-reach subset of the same feasible set,
    the pick-the-biggest-sites strategy a planner would use without
    overlap data. overlap_avoided is the baseline's deduction minus the
    selection's.
    """

    gross_exposures: float
    overlap_deduction: float
    net_score: float
    naive_baseline: ScoreBreakdown
    baseline_selection: tuple[str, ...]
    overlap_avoided: float


def _breakdown(
    ids: Iterable[str], matrix: OverlapMatrix, weights: Mapping[str, float]
) -> ScoreBreakdown:
    ids = sorted(set(ids))
    gross = sum(weights[node_id] for node_id in ids)
    net_score = fitness(ids, matrix, weights)
    return ScoreBreakdown(
        gross_exposures=gross,
        overlap_deduction=gross - net_score,
        net_score=net_score,
    )


def plan_metrics(
    selection: Iterable[str],
    matrix: OverlapMatrix,
    net: WebsiteNetwork,
    cost_model: CostModel,
    campaign: CampaignSpec,
) -> PlanMetrics:
    """Score a selection and the naive top-m-by-reach baseline beside it."""
    selection = sorted(set(selection))
    feasible = demographic_filter(net, campaign.targeting)
    by_reach = sorted(feasible, key=lambda i: (-(net.get(i).reach_pct or 0.0), i))
    baseline = sorted(by_reach[: len(selection)])
    weights = site_weights(net, feasible | set(selection), campaign, cost_model)
    chosen = _breakdown(selection, matrix, weights)
    base = _breakdown(baseline, matrix, weights)
    return PlanMetrics(
        gross_exposures=chosen.gross_exposures,
        overlap_deduction=chosen.overlap_deduction,
        net_score=chosen.net_score,
        naive_baseline=base,
        baseline_selection=tuple(baseline),
        overlap_avoided=base.overlap_deduction - chosen.overlap_deduction,
    )
