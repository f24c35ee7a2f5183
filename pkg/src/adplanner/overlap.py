"""Audience overlap: max-over-paths product of symmetrized edge weights.

The overlap between two sites is the strongest connection between them:
the maximum over connecting paths of the product of edge weights, where
each undirected weight is the larger of the two directed traffic
fractions. Because every weight is at most 1, longer paths only ever
weaken the product, so a best-first search on the running product is
exact and the all-pairs matrix closes under a (max, *) sweep.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass

import numpy as np

from .network import WebsiteNetwork

SymmetrizedGraph = dict[str, dict[str, float]]

CACHE_VERSION = 1


class MatrixFileError(ValueError):
    """Raised when a matrix cache file is malformed or stale."""


def symmetrize(net: WebsiteNetwork) -> SymmetrizedGraph:
    """Undirected weights: w(i, j) = max of the two directed alphas (absent = 0)."""
    graph: SymmetrizedGraph = {node_id: {} for node_id in net.node_ids()}
    for edge in net.edges:
        if edge.src not in graph or edge.dst not in graph:
            raise ValueError(f"edge {edge.src}->{edge.dst} references an unknown node")
        if edge.src == edge.dst:
            raise ValueError(f"edge {edge.src}->{edge.dst} is a self-loop")
        if not (math.isfinite(edge.alpha) and 0 < edge.alpha <= 1):
            raise ValueError(
                f"edge {edge.src}->{edge.dst}: alpha {edge.alpha!r} outside (0, 1]"
            )
        current = graph[edge.src].get(edge.dst, 0.0)
        weight = max(current, edge.alpha)
        graph[edge.src][edge.dst] = weight
        graph[edge.dst][edge.src] = weight
    return graph


@dataclass(frozen=True)
class PathResult:
    """Best connection between two nodes: its strength and one path realizing it."""

    overlap: float
    path: tuple[str, ...]


def max_product_path(graph: SymmetrizedGraph, source: str, target: str) -> PathResult:
    """Best-first search maximizing the product of weights along the path.

    Exact because weights never exceed 1: a partial product only
    shrinks, so the first time the target leaves the frontier its
    product is the maximum. Ties break toward fewer hops, then the
    lexicographically smallest node sequence. Disconnected endpoints
    give overlap 0 and an empty path.
    """
    for node_id in (source, target):
        if node_id not in graph:
            raise ValueError(f"unknown node id {node_id!r}")
    if source == target:
        return PathResult(1.0, (source,))
    # Heap keys (-product, hops, path) grow strictly along any expansion,
    # so settling on first pop is safe and the tie-break order is exact.
    frontier: list[tuple[float, int, tuple[str, ...]]] = [(-1.0, 0, (source,))]
    settled: set[str] = set()
    while frontier:
        neg_product, hops, path = heapq.heappop(frontier)
        node = path[-1]
        if node in settled:
            continue
        settled.add(node)
        if node == target:
            return PathResult(-neg_product, path)
        for neighbor, weight in sorted(graph[node].items()):
            if neighbor not in settled:
                heapq.heappush(frontier, (neg_product * weight, hops + 1, path + (neighbor,)))
    return PathResult(0.0, ())


class OverlapMatrix:
    """All-pairs overlap, indexed by node id.

    Symmetric, diagonal exactly 1, entries in [0, 1]. The backing array
    is read-only; use :meth:`value` for single lookups and
    :meth:`as_array` for vectorized work.
    """

    def __init__(self, ids: tuple[str, ...], values: np.ndarray):
        array = np.asarray(values, dtype=float)
        if array.shape != (len(ids), len(ids)):
            raise ValueError(f"matrix shape {array.shape} does not match {len(ids)} ids")
        self._ids = tuple(ids)
        self._index = {node_id: i for i, node_id in enumerate(self._ids)}
        array.setflags(write=False)
        self._values = array

    @property
    def ids(self) -> tuple[str, ...]:
        return self._ids

    def index_of(self, node_id: str) -> int:
        if node_id not in self._index:
            raise ValueError(f"unknown node id {node_id!r}")
        return self._index[node_id]

    def value(self, i: str, j: str) -> float:
        return float(self._values[self.index_of(i), self.index_of(j)])

    def as_array(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return len(self._ids)


def overlap_matrix(net: WebsiteNetwork) -> OverlapMatrix:
    """Close the symmetrized adjacency matrix under (max, product).

    One in-place sweep per intermediate node k; correct for the same
    reason the best-first search is (weights <= 1, so the k-th sweep
    cannot change row or column k). Produces exactly the values the
    per-pair search would, in O(n^3) vectorized steps.
    """
    graph = symmetrize(net)
    ids = tuple(net.node_ids())
    index = {node_id: i for i, node_id in enumerate(ids)}
    n = len(ids)
    matrix = np.zeros((n, n), dtype=float)
    for node_id, neighbors in graph.items():
        for neighbor, weight in neighbors.items():
            matrix[index[node_id], index[neighbor]] = weight
    np.fill_diagonal(matrix, 1.0)
    for k in range(n):
        np.maximum(matrix, np.outer(matrix[:, k], matrix[k, :]), out=matrix)
    return OverlapMatrix(ids, matrix)


def serialize_matrix(matrix: OverlapMatrix, network_hash: str) -> bytes:
    """Cache file for a computed matrix, bound to its source network's hash."""
    doc = {
        "version": CACHE_VERSION,
        "network_hash": network_hash,
        "ids": list(matrix.ids),
        "values": [float(v) for v in matrix.as_array().ravel()],
    }
    return json.dumps(doc, sort_keys=True).encode("utf-8")


def parse_matrix_file(data: bytes | str, expected_hash: str) -> OverlapMatrix:
    """Load a cached matrix; reject it if it was built from a different network."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"malformed JSON at offset {exc.pos}: {exc.msg}") from exc
    if not isinstance(doc, dict) or doc.get("version") != CACHE_VERSION:
        raise MatrixFileError("not a matrix cache file")
    if doc.get("network_hash") != expected_hash:
        raise MatrixFileError(
            f"cache was built from network {doc.get('network_hash')!r}, expected {expected_hash!r}"
        )
    ids = doc.get("ids")
    values = doc.get("values")
    if not isinstance(ids, list) or not isinstance(values, list):
        raise MatrixFileError("cache file missing ids or values")
    n = len(ids)
    if len(values) != n * n:
        raise MatrixFileError(f"expected {n * n} values for {n} ids, got {len(values)}")
    array = np.array(values, dtype=float).reshape(n, n)
    return OverlapMatrix(tuple(ids), array)
