"""Test utilities: deterministic network factories and the path oracle."""

from __future__ import annotations

from pathlib import Path

from adplanner import (
    SyntheticConfig,
    WebsiteNetwork,
    enumerate_path_overlap,
    generate_synthetic,
    symmetrize,
)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
ABC_PATH = DATA_DIR / "abc.json"


def small_network(seed: int, node_count: int = 10, communities: int = 2,
                  intra: float = 0.35, inter: float = 0.1) -> WebsiteNetwork:
    """Deterministic small network for oracle comparisons (seed is the identity)."""
    cfg = SyntheticConfig(
        node_count=node_count,
        community_count=min(communities, node_count),
        intra_edge_prob=intra,
        inter_edge_prob=inter,
    )
    net, _ = generate_synthetic(cfg, seed)
    return net


def oracle_matrix(net: WebsiteNetwork) -> dict[tuple[str, str], float]:
    """All-pairs overlap by exhaustive simple-path enumeration."""
    graph = symmetrize(net)
    ids = net.node_ids()
    return {
        (a, b): enumerate_path_overlap(graph, a, b)
        for a in ids
        for b in ids
    }
