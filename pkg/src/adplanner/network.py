"""Core data model: websites, upstream-traffic edges, and the network graph.

A network is immutable after construction. Nodes may be *incomplete*
(no reach figure, empty demographic ratios) while a crawl is being
assembled; ``validate_network`` reports such nodes and ``ingest.prune``
removes them. Everything downstream of pruning assumes complete nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator


@dataclass(frozen=True)
class Website:
    """A node: one website with its audience metrics.

    reach_pct is the percentage of the total internet population that
    visits the site, None if unknown. The ratio maps give the site's
    share of an age/income bucket relative to the internet average
    (1.0 = average); empty maps mean the data is unavailable.
    """

    id: str
    domain: str
    reach_pct: float | None
    age_ratios: dict[str, float] = field(default_factory=dict)
    income_ratios: dict[str, float] = field(default_factory=dict)
    banner_ads: bool = True

    def is_complete(self) -> bool:
        """True if the node carries everything pruning requires to keep it."""
        return (
            self.reach_pct is not None
            and bool(self.age_ratios)
            and bool(self.income_ratios)
        )


@dataclass(frozen=True)
class Edge:
    """Directed upstream-traffic edge: ``alpha`` of dst's visitors come from src."""

    src: str
    dst: str
    alpha: float


class WebsiteNetwork:
    """Immutable directed weighted graph of websites.

    Construction enforces only what the representation itself requires
    (unique node ids, at most one edge per ordered pair); semantic
    problems such as dangling edge endpoints or out-of-range values are
    *representable* and reported by :func:`validate_network`.
    """

    def __init__(self, nodes: Iterable[Website], edges: Iterable[Edge]):
        node_map: dict[str, Website] = {}
        for node in nodes:
            if node.id in node_map:
                raise ValueError(f"duplicate node id {node.id!r}")
            node_map[node.id] = node
        edge_list: list[Edge] = []
        seen: set[tuple[str, str]] = set()
        for edge in edges:
            key = (edge.src, edge.dst)
            if key in seen:
                raise ValueError(f"duplicate edge {edge.src!r} -> {edge.dst!r}")
            seen.add(key)
            edge_list.append(edge)
        self._nodes = node_map
        self._edges = tuple(edge_list)

    @property
    def nodes(self) -> dict[str, Website]:
        return dict(self._nodes)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def node_ids(self) -> list[str]:
        """Node ids in sorted order (the canonical iteration order)."""
        return sorted(self._nodes)

    def get(self, node_id: str) -> Website:
        return self._nodes[node_id]

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def __iter__(self) -> Iterator[Website]:
        for node_id in sorted(self._nodes):
            yield self._nodes[node_id]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WebsiteNetwork):
            return NotImplemented
        return self._nodes == other._nodes and set(self._edges) == set(other._edges)

    def __repr__(self) -> str:
        return f"WebsiteNetwork(nodes={len(self._nodes)}, edges={len(self._edges)})"


@dataclass(frozen=True)
class Violation:
    """One invariant violation, naming the offending node or edge."""

    kind: str  # "node" | "edge"
    subject: str  # node id or "src->dst"
    message: str

    def __str__(self) -> str:
        return f"{self.kind} {self.subject}: {self.message}"


def _finite(x: float) -> bool:
    return isinstance(x, (int, float)) and math.isfinite(x)


def validate_network(net: WebsiteNetwork) -> list[Violation]:
    """Check every model invariant; an empty report means the network is valid.

    Violations are data, not failures: incomplete pre-prune networks
    are legal to hold in memory, they just do not validate.
    """
    report: list[Violation] = []
    for node_id in net.node_ids():
        node = net.get(node_id)
        if not node.id:
            report.append(Violation("node", repr(node_id), "empty id"))
        if not node.domain:
            report.append(Violation("node", node_id, "empty domain"))
        if node.reach_pct is None:
            report.append(Violation("node", node_id, "missing reach"))
        elif not _finite(node.reach_pct) or not 0 < node.reach_pct <= 100:
            report.append(
                Violation("node", node_id, f"reach_pct {node.reach_pct!r} outside (0, 100]")
            )
        for dim, ratios in (("age_ratios", node.age_ratios), ("income_ratios", node.income_ratios)):
            if not ratios:
                report.append(Violation("node", node_id, f"empty {dim}"))
            for bucket, value in sorted(ratios.items()):
                if not _finite(value) or value < 0:
                    report.append(
                        Violation("node", node_id, f"{dim}[{bucket!r}] = {value!r} is not a finite ratio >= 0")
                    )
    for edge in sorted(net.edges, key=lambda e: (e.src, e.dst)):
        subject = f"{edge.src}->{edge.dst}"
        if edge.src not in net:
            report.append(Violation("edge", subject, f"unknown src node {edge.src!r}"))
        if edge.dst not in net:
            report.append(Violation("edge", subject, f"unknown dst node {edge.dst!r}"))
        if edge.src == edge.dst:
            report.append(Violation("edge", subject, "self-loop"))
        if not _finite(edge.alpha) or not 0 < edge.alpha <= 1:
            report.append(Violation("edge", subject, f"alpha {edge.alpha!r} outside (0, 1]"))
    return report
