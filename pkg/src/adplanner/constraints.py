"""Demographic targeting, the reach-proportional CPM model, and impressions.

A site is feasible for a campaign when, in every targeted dimension, it
over-indexes (ratio strictly above the 1.0 internet average) in at
least one of the targeted buckets. CPM is reach min-max normalized
into [$0.5, $5], and the budget is split equally across the selected
sites, so per-site impressions follow directly from cpm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .network import WebsiteNetwork

CPM_MIN_USD = 0.5
CPM_MAX_USD = 5.0


@dataclass(frozen=True)
class Targeting:
    """Targeted demographic buckets; an empty set disables that dimension."""

    age_buckets: frozenset[str] = frozenset()
    income_buckets: frozenset[str] = frozenset()

    def is_empty(self) -> bool:
        return not self.age_buckets and not self.income_buckets


def bucket_vocabulary(net: WebsiteNetwork) -> dict[str, list[str]]:
    """All bucket labels the network's nodes mention, per dimension, sorted."""
    age: set[str] = set()
    income: set[str] = set()
    for node in net:
        age.update(node.age_ratios)
        income.update(node.income_ratios)
    return {"age": sorted(age), "income": sorted(income)}


def demographic_filter(net: WebsiteNetwork, targeting: Targeting) -> set[str]:
    """Node ids passing the targeting: union within a dimension, intersection across.

    Unknown bucket labels are an error (they would silently filter
    everything out otherwise). Empty targeting passes every node.
    """
    vocab = bucket_vocabulary(net)
    for dimension, targeted in (("age", targeting.age_buckets), ("income", targeting.income_buckets)):
        unknown = sorted(targeted - set(vocab[dimension]))
        if unknown:
            raise ValueError(
                f"unknown {dimension} bucket label(s): {', '.join(repr(b) for b in unknown)}"
            )
    feasible: set[str] = set()
    for node in net:
        if targeting.age_buckets and not any(
            node.age_ratios.get(b, 0.0) > 1.0 for b in targeting.age_buckets
        ):
            continue
        if targeting.income_buckets and not any(
            node.income_ratios.get(b, 0.0) > 1.0 for b in targeting.income_buckets
        ):
            continue
        feasible.add(node.id)
    return feasible


@dataclass(frozen=True)
class CostModel:
    """Per-site cost per 1000 impressions, in USD."""

    cpm_usd: dict[str, float] = field(default_factory=dict)

    def __getitem__(self, node_id: str) -> float:
        if node_id not in self.cpm_usd:
            raise ValueError(f"no cpm for node id {node_id!r}")
        return self.cpm_usd[node_id]


def build_cost_model(net: WebsiteNetwork) -> CostModel:
    """Min-max normalize reach into [CPM_MIN_USD, CPM_MAX_USD].

    Computed over the whole network so costs stay put when targeting
    changes. Equal-reach degenerate networks price every site at the
    midpoint.
    """
    if len(net) == 0:
        raise ValueError("cannot build a cost model for an empty network")
    reaches: dict[str, float] = {}
    for node in net:
        if node.reach_pct is None:
            raise ValueError(f"node {node.id!r} has no reach; prune the network first")
        reaches[node.id] = node.reach_pct
    r_min = min(reaches.values())
    r_max = max(reaches.values())
    if r_max == r_min:
        midpoint = (CPM_MIN_USD + CPM_MAX_USD) / 2
        return CostModel({node_id: midpoint for node_id in reaches})
    span = CPM_MAX_USD - CPM_MIN_USD
    scale = r_max - r_min
    # the quotient can round one ulp above 1 for reach just under r_max;
    # clamp so no price escapes the cap (endpoints stay exact: 0/1 map
    # to CPM_MIN_USD and CPM_MAX_USD with no rounding)
    return CostModel(
        {
            node_id: CPM_MIN_USD + span * min(1.0, (reach - r_min) / scale)
            for node_id, reach in reaches.items()
        }
    )


def impressions_per_site(budget_usd: float, m: int, cpm_usd: float) -> float:
    """Impressions bought on one site when ``budget_usd`` is split over m sites."""
    if budget_usd <= 0:
        raise ValueError(f"budget_usd must be > 0, got {budget_usd}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if cpm_usd <= 0:
        raise ValueError(f"cpm_usd must be > 0, got {cpm_usd}")
    return (budget_usd / m) / cpm_usd * 1000.0
