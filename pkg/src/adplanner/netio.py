"""Network file format: canonical JSON parse/serialize and content hashing.

File layout (version 1, UTF-8 JSON)::

    { "version": 1,
      "nodes": [ { "id": "...", "domain": "...", "reach_pct": 40.0,
                   "age_ratios": {"25-34": 1.3, ...},
                   "income_ratios": {"60-100k": 1.1, ...},
                   "banner_ads": true }, ... ],
      "edges": [ { "src": "...", "dst": "...", "alpha_pct": 80.0 }, ... ] }

alpha_pct is a percentage in (0, 100]; the parser stores the fraction
alpha_pct / 100. reach_pct may be null (or absent) and the ratio maps
may be empty: that represents a pre-prune node whose data was
unavailable. Serialization is canonical: nodes sorted by id, edges by
(src, dst), keys sorted, so serialize∘parse is idempotent.
"""

from __future__ import annotations

import hashlib
import json
import math
from typing import Any

from .network import Edge, Website, WebsiteNetwork

FORMAT_VERSION = 1


class NetworkFileError(ValueError):
    """Raised when a network file is malformed or violates an invariant."""


def _fail(message: str) -> None:
    raise NetworkFileError(message)


def _require_number(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        _fail(f"{what} must be a finite number, got {value!r}")
    return float(value)


def _parse_ratios(raw: Any, what: str) -> dict[str, float]:
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        _fail(f"{what} must be an object")
    ratios: dict[str, float] = {}
    for bucket, value in raw.items():
        if not isinstance(bucket, str) or not bucket:
            _fail(f"{what} has an empty bucket label")
        number = _require_number(value, f"{what}[{bucket!r}]")
        if number < 0:
            _fail(f"{what}[{bucket!r}] = {number} is negative")
        ratios[bucket] = number
    return ratios


def _parse_node(raw: Any, position: int) -> Website:
    if not isinstance(raw, dict):
        _fail(f"nodes[{position}] must be an object")
    node_id = raw.get("id")
    if not isinstance(node_id, str) or not node_id:
        _fail(f"nodes[{position}] has no usable id")
    domain = raw.get("domain")
    if not isinstance(domain, str) or not domain:
        _fail(f"node {node_id!r}: domain must be a nonempty string")
    reach_raw = raw.get("reach_pct")
    reach: float | None = None
    if reach_raw is not None:
        reach = _require_number(reach_raw, f"node {node_id!r}: reach_pct")
        if not 0 < reach <= 100:
            _fail(f"node {node_id!r}: reach_pct {reach} outside (0, 100]")
    banner = raw.get("banner_ads")
    if not isinstance(banner, bool):
        _fail(f"node {node_id!r}: banner_ads must be a boolean")
    return Website(
        id=node_id,
        domain=domain,
        reach_pct=reach,
        age_ratios=_parse_ratios(raw.get("age_ratios"), f"node {node_id!r}: age_ratios"),
        income_ratios=_parse_ratios(raw.get("income_ratios"), f"node {node_id!r}: income_ratios"),
        banner_ads=banner,
    )


def parse_network_file(data: bytes | str) -> WebsiteNetwork:
    """Parse and fully validate a network file; errors name the offending element."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise NetworkFileError(f"malformed JSON at offset {exc.pos}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        _fail("top level must be an object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        _fail(f"unknown version {version!r} (expected {FORMAT_VERSION})")
    raw_nodes = doc.get("nodes")
    raw_edges = doc.get("edges")
    if not isinstance(raw_nodes, list) or not isinstance(raw_edges, list):
        _fail("'nodes' and 'edges' must be arrays")

    nodes: list[Website] = []
    ids: set[str] = set()
    for position, raw in enumerate(raw_nodes):
        node = _parse_node(raw, position)
        if node.id in ids:
            _fail(f"duplicate node id {node.id!r}")
        ids.add(node.id)
        nodes.append(node)

    edges: list[Edge] = []
    seen: set[tuple[str, str]] = set()
    for position, raw in enumerate(raw_edges):
        if not isinstance(raw, dict):
            _fail(f"edges[{position}] must be an object")
        src, dst = raw.get("src"), raw.get("dst")
        if not isinstance(src, str) or not isinstance(dst, str):
            _fail(f"edges[{position}] must name src and dst")
        subject = f"{src}->{dst}"
        if src not in ids:
            _fail(f"edge {subject}: unknown src node {src!r}")
        if dst not in ids:
            _fail(f"edge {subject}: unknown dst node {dst!r}")
        if src == dst:
            _fail(f"edge {subject}: self-loop")
        if (src, dst) in seen:
            _fail(f"duplicate edge {subject}")
        seen.add((src, dst))
        alpha_pct = _require_number(raw.get("alpha_pct"), f"edge {subject}: alpha_pct")
        if not 0 < alpha_pct <= 100:
            _fail(f"edge {subject}: alpha_pct {alpha_pct} outside (0, 100]")
        edges.append(Edge(src=src, dst=dst, alpha=alpha_pct / 100.0))

    return WebsiteNetwork(nodes, edges)


def network_to_doc(net: WebsiteNetwork) -> dict[str, Any]:
    """Canonical JSON-ready document for a network (nodes/edges sorted)."""
    nodes = []
    for node_id in net.node_ids():
        node = net.get(node_id)
        nodes.append(
            {
                "id": node.id,
                "domain": node.domain,
                "reach_pct": node.reach_pct,
                "age_ratios": {k: node.age_ratios[k] for k in sorted(node.age_ratios)},
                "income_ratios": {k: node.income_ratios[k] for k in sorted(node.income_ratios)},
                "banner_ads": node.banner_ads,
            }
        )
    edges = [
        {"src": e.src, "dst": e.dst, "alpha_pct": e.alpha * 100.0}
        for e in sorted(net.edges, key=lambda e: (e.src, e.dst))
    ]
    return {"version": FORMAT_VERSION, "nodes": nodes, "edges": edges}


def serialize_network(net: WebsiteNetwork) -> bytes:
    return json.dumps(network_to_doc(net), sort_keys=True, indent=1).encode("utf-8")


def network_content_hash(net: WebsiteNetwork) -> str:
    """Stable identity of the network's content (used to key matrix caches)."""
    return hashlib.sha256(serialize_network(net)).hexdigest()
