"""Network construction: crawl-record ingestion, pruning, synthetic generation.

A crawl record is the answer one analytics lookup gives for a site: its
top upstream traffic sources (at most ten, each with the percentage of
the site's visitors it supplies), audience metrics, and banner
eligibility. ``build_from_crawl`` replays the recursive lookup process
breadth-first from a seed site; ``prune`` then removes nodes the crawl
could not fully describe. ``generate_synthetic`` fabricates networks
with community structure for tests and benchmarks.
"""

from __future__ import annotations

import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Mapping

from .network import Edge, Website, WebsiteNetwork

MAX_UPSTREAM = 10

AGE_BUCKETS = ("18-24", "25-34", "35-44", "45-54", "55-64", "65+")
INCOME_BUCKETS = ("0-30k", "30-60k", "60-100k", "100k+")


class CrawlFileError(ValueError):
    """Raised when a crawl-record file is malformed."""


@dataclass(frozen=True)
class UpstreamRef:
    """One upstream entry: ``alpha_pct`` percent of the owner's visitors come from ``domain``."""

    domain: str
    alpha_pct: float


@dataclass(frozen=True)
class CrawlRecord:
    """Everything one lookup reports about a site."""

    domain: str
    upstream: tuple[UpstreamRef, ...] = ()
    reach_pct: float | None = None
    age_ratios: dict[str, float] = field(default_factory=dict)
    income_ratios: dict[str, float] = field(default_factory=dict)
    banner_ads: bool = True

    def __post_init__(self) -> None:
        if not self.domain:
            raise ValueError("crawl record has an empty domain")
        if len(self.upstream) > MAX_UPSTREAM:
            raise ValueError(
                f"record {self.domain!r}: {len(self.upstream)} upstream entries (limit {MAX_UPSTREAM})"
            )
        seen: set[str] = set()
        for ref in self.upstream:
            if ref.domain == self.domain:
                raise ValueError(f"record {self.domain!r}: lists itself upstream")
            if ref.domain in seen:
                raise ValueError(f"record {self.domain!r}: duplicate upstream entry {ref.domain!r}")
            seen.add(ref.domain)
            if not (math.isfinite(ref.alpha_pct) and 0 < ref.alpha_pct <= 100):
                raise ValueError(
                    f"record {self.domain!r}: upstream {ref.domain!r} alpha_pct "
                    f"{ref.alpha_pct!r} outside (0, 100]"
                )


def _node_from_record(domain: str, record: CrawlRecord | None) -> Website:
    if record is None:
        # Referenced upstream but never crawled: keep a placeholder until prune.
        return Website(id=domain, domain=domain, reach_pct=None, banner_ads=False)
    return Website(
        id=domain,
        domain=domain,
        reach_pct=record.reach_pct,
        age_ratios=dict(record.age_ratios),
        income_ratios=dict(record.income_ratios),
        banner_ads=record.banner_ads,
    )


def build_from_crawl(
    records: Mapping[str, CrawlRecord], seed_domain: str, max_nodes: int
) -> WebsiteNetwork:
    """Expand a network breadth-first from ``seed_domain``.

    Each dequeued site contributes one directed edge per upstream entry,
    weighted by alpha_pct / 100, pointing from the upstream site to it.
    New sites are added (and enqueued) until the network holds
    ``max_nodes`` nodes, at which point expansion stops entirely. An
    upstream domain with no record of its own becomes a metric-less
    placeholder that ``prune`` will drop.
    """
    if max_nodes < 1:
        raise ValueError(f"max_nodes must be >= 1, got {max_nodes}")
    if seed_domain not in records:
        raise ValueError(f"seed not found: {seed_domain!r}")
    for domain, record in records.items():
        if record.domain != domain:
            raise ValueError(f"records key {domain!r} holds record for {record.domain!r}")

    nodes: dict[str, Website] = {seed_domain: _node_from_record(seed_domain, records[seed_domain])}
    edges: list[Edge] = []
    queue: deque[str] = deque([seed_domain])
    full = len(nodes) >= max_nodes
    while queue and not full:
        current = queue.popleft()
        record = records.get(current)
        if record is None:
            continue
        for ref in record.upstream:
            if ref.domain not in nodes:
                if len(nodes) >= max_nodes:
                    full = True
                    break
                nodes[ref.domain] = _node_from_record(ref.domain, records.get(ref.domain))
                queue.append(ref.domain)
            edges.append(Edge(src=ref.domain, dst=current, alpha=ref.alpha_pct / 100.0))
    return WebsiteNetwork(nodes.values(), edges)


def prune(net: WebsiteNetwork) -> WebsiteNetwork:
    """Drop nodes without reach, age, or income data, and non-banner sites.

    Edges incident to a dropped node go with it. Idempotent.
    """
    kept = [node for node in net if node.is_complete() and node.banner_ads]
    kept_ids = {node.id for node in kept}
    edges = [e for e in net.edges if e.src in kept_ids and e.dst in kept_ids]
    return WebsiteNetwork(kept, edges)


# --- crawl-record files ------------------------------------------------

def _crawl_ratios(raw: Any, what: str) -> dict[str, float]:
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise CrawlFileError(f"{what} must be an object")
    ratios: dict[str, float] = {}
    for bucket, value in raw.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) or value < 0:
            raise CrawlFileError(f"{what}[{bucket!r}] = {value!r} is not a finite ratio >= 0")
        ratios[str(bucket)] = float(value)
    return ratios


def parse_crawl_records(data: bytes | str) -> dict[str, CrawlRecord]:
    """Parse a crawl-record file: a JSON map from domain to record."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CrawlFileError(f"malformed JSON at offset {exc.pos}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise CrawlFileError("top level must be an object mapping domain to record")
    records: dict[str, CrawlRecord] = {}
    for domain, raw in doc.items():
        if not isinstance(raw, dict):
            raise CrawlFileError(f"record {domain!r} must be an object")
        inner = raw.get("domain", domain)
        if inner != domain:
            raise CrawlFileError(f"record keyed {domain!r} names domain {inner!r}")
        raw_upstream = raw.get("upstream", [])
        if not isinstance(raw_upstream, list):
            raise CrawlFileError(f"record {domain!r}: upstream must be an array")
        upstream = []
        for position, entry in enumerate(raw_upstream):
            if not isinstance(entry, dict) or not isinstance(entry.get("domain"), str):
                raise CrawlFileError(f"record {domain!r}: upstream[{position}] must name a domain")
            alpha_pct = entry.get("alpha_pct")
            if isinstance(alpha_pct, bool) or not isinstance(alpha_pct, (int, float)):
                raise CrawlFileError(f"record {domain!r}: upstream[{position}] needs numeric alpha_pct")
            upstream.append(UpstreamRef(domain=entry["domain"], alpha_pct=float(alpha_pct)))
        reach_raw = raw.get("reach_pct")
        reach: float | None = None
        if reach_raw is not None:
            if isinstance(reach_raw, bool) or not isinstance(reach_raw, (int, float)) \
                    or not math.isfinite(reach_raw) or not 0 < reach_raw <= 100:
                raise CrawlFileError(f"record {domain!r}: reach_pct {reach_raw!r} outside (0, 100]")
            reach = float(reach_raw)
        banner = raw.get("banner_ads", True)
        if not isinstance(banner, bool):
            raise CrawlFileError(f"record {domain!r}: banner_ads must be a boolean")
        try:
            records[domain] = CrawlRecord(
                domain=domain,
                upstream=tuple(upstream),
                reach_pct=reach,
                age_ratios=_crawl_ratios(raw.get("age_ratios"), f"record {domain!r}: age_ratios"),
                income_ratios=_crawl_ratios(raw.get("income_ratios"), f"record {domain!r}: income_ratios"),
                banner_ads=banner,
            )
        except ValueError as exc:
            raise CrawlFileError(str(exc)) from exc
    return records


def serialize_crawl_records(records: Mapping[str, CrawlRecord]) -> bytes:
    doc: dict[str, Any] = {}
    for domain in sorted(records):
        record = records[domain]
        doc[domain] = {
            "domain": record.domain,
            "upstream": [
                {"domain": ref.domain, "alpha_pct": ref.alpha_pct} for ref in record.upstream
            ],
            "reach_pct": record.reach_pct,
            "age_ratios": {k: record.age_ratios[k] for k in sorted(record.age_ratios)},
            "income_ratios": {k: record.income_ratios[k] for k in sorted(record.income_ratios)},
            "banner_ads": record.banner_ads,
        }
    return json.dumps(doc, sort_keys=True, indent=1).encode("utf-8")


# --- synthetic networks -------------------------------------------------

@dataclass(frozen=True)
class SyntheticConfig:
    """Shape of a generated network.

    Nodes fall into ``community_count`` contiguous, near-equal blocks;
    edges are likely within a block and rare across blocks. Reach
    follows a truncated Pareto distribution so a few sites are huge and
    most are small. ``missing_data_prob`` is the chance a node is
    generated without demographics, to give prune something to do.
    """

    node_count: int
    community_count: int = 4
    reach_pareto_alpha: float = 1.2
    intra_edge_prob: float = 0.3
    inter_edge_prob: float = 0.02
    missing_data_prob: float = 0.0

    def __post_init__(self) -> None:
        if self.node_count < 1:
            raise ValueError(f"node_count must be >= 1, got {self.node_count}")
        if not 1 <= self.community_count <= self.node_count:
            raise ValueError(
                f"community_count must be in [1, node_count], got {self.community_count}"
            )
        if not self.reach_pareto_alpha > 0:
            raise ValueError(f"reach_pareto_alpha must be > 0, got {self.reach_pareto_alpha}")
        for name in ("intra_edge_prob", "inter_edge_prob", "missing_data_prob"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise ValueError(f"{name} must be in [0, 1], got {value}")


def generate_synthetic(
    cfg: SyntheticConfig, rng_seed: int
) -> tuple[WebsiteNetwork, dict[str, CrawlRecord]]:
    """Generate a network plus the crawl-record map that reproduces it.

    Pure function of (cfg, rng_seed): one RNG, consumed in a fixed
    order (per-node metrics first, then edge candidates in (dst, src)
    order). Every node keeps only its top ten in-edges by weight, so
    the emitted crawl records are always valid.
    """
    rng = random.Random(rng_seed)
    domains = [f"site{i:03d}.example" for i in range(cfg.node_count)]
    community = [i * cfg.community_count // cfg.node_count for i in range(cfg.node_count)]

    nodes: list[Website] = []
    for domain in domains:
        reach = min(100.0, rng.paretovariate(cfg.reach_pareto_alpha))
        if rng.random() < cfg.missing_data_prob:
            age: dict[str, float] = {}
            income: dict[str, float] = {}
        else:
            age = {b: round(rng.lognormvariate(0.0, 0.35), 4) for b in AGE_BUCKETS}
            income = {b: round(rng.lognormvariate(0.0, 0.35), 4) for b in INCOME_BUCKETS}
        nodes.append(
            Website(id=domain, domain=domain, reach_pct=reach,
                    age_ratios=age, income_ratios=income, banner_ads=True)
        )

    # alpha_pct is the primary draw; the stored fraction is exactly alpha_pct/100,
    # the same division the crawl-record parser performs.
    in_refs: dict[str, list[UpstreamRef]] = {d: [] for d in domains}
    for dst_index, dst in enumerate(domains):
        for src_index, src in enumerate(domains):
            if src_index == dst_index:
                continue
            same = community[src_index] == community[dst_index]
            prob = cfg.intra_edge_prob if same else cfg.inter_edge_prob
            if rng.random() < prob:
                in_refs[dst].append(UpstreamRef(domain=src, alpha_pct=100.0 * (1.0 - rng.random())))

    edges: list[Edge] = []
    records: dict[str, CrawlRecord] = {}
    for node in nodes:
        ranked = sorted(in_refs[node.id], key=lambda r: (-r.alpha_pct, r.domain))[:MAX_UPSTREAM]
        edges.extend(Edge(src=ref.domain, dst=node.id, alpha=ref.alpha_pct / 100.0) for ref in ranked)
        records[node.id] = CrawlRecord(
            domain=node.id,
            upstream=tuple(ranked),
            reach_pct=node.reach_pct,
            age_ratios=dict(node.age_ratios),
            income_ratios=dict(node.income_ratios),
            banner_ads=node.banner_ads,
        )
    return WebsiteNetwork(nodes, edges), records
