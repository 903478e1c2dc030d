"""Unweighted shortest paths: counting BFS, distance matrices, diameter.

Two traversal surfaces coexist on purpose. bfs() is the pure-Python
reference: it returns distances, exact geodesic counts (Python integers,
so no overflow), the predecessor DAG, and the discovery order, and it is
what path extraction and the brute-force oracles consume.
single_source_distances() is the vectorized fast path used by the
all-pairs drivers, where only hop counts are needed.

Unreachable vertices carry dist None in ShortestPathData and -1 in the
numpy arrays; no arithmetic is ever done on either sentinel.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph


@dataclass
class ShortestPathData:
    """Single-source BFS output.

    sigma[v] counts distinct geodesics from source to v; preds[v] lists
    the neighbors of v one hop closer to the source. The recurrence
    sigma[v] = sum(sigma[u] for u in preds[v]) holds at every reachable
    vertex other than the source.
    """

    source: int
    dist: list[int | None]
    sigma: list[int]
    preds: list[list[int]]
    order: list[int] = field(default_factory=list)


def bfs(g: Graph, source: int) -> ShortestPathData:
    """Counting BFS from one source, deterministic by sorted adjacency."""
    n = g.n
    if not (0 <= source < n):
        raise ValueError(f"source {source} out of range for n={n}")
    dist: list[int | None] = [None] * n
    sigma = [0] * n
    preds: list[list[int]] = [[] for _ in range(n)]
    order: list[int] = []
    dist[source] = 0
    sigma[source] = 1
    queue = deque([source])
    while queue:
        v = queue.popleft()
        order.append(v)
        dv = dist[v]
        for w in g.neighbors(v):
            if dist[w] is None:
                dist[w] = dv + 1
                queue.append(w)
            if dist[w] == dv + 1:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return ShortestPathData(source, dist, sigma, preds, order)


def single_source_distances(g: Graph, source: int) -> np.ndarray:
    """Hop counts from source as an int32 array; -1 marks unreachable."""
    n = g.n
    if not (0 <= source < n):
        raise ValueError(f"source {source} out of range for n={n}")
    indptr, nbrs = g.csr_arrays()
    dist = np.full(n, -1, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int32)
    level = 0
    while frontier.size:
        _, targets = _gather_neighbors(indptr, nbrs, frontier)
        fresh = targets[dist[targets] == -1]
        if fresh.size == 0:
            break
        frontier = np.unique(fresh)
        level += 1
        dist[frontier] = level
    return dist


def _gather_neighbors(
    indptr: np.ndarray, nbrs: np.ndarray, frontier: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """All (origin, neighbor) incidences of the frontier, as parallel arrays."""
    counts = (indptr[frontier + 1] - indptr[frontier]).astype(np.int64)
    total = int(counts.sum())
    if total == 0:
        empty = np.empty(0, dtype=np.int32)
        return empty, empty
    origins = np.repeat(frontier, counts)
    starts = np.repeat(indptr[frontier], counts)
    within = np.arange(total, dtype=np.int64) - np.repeat(
        np.cumsum(counts) - counts, counts
    )
    return origins, nbrs[starts + within]


def distance_matrix(g: Graph, cap: int = 5000) -> np.ndarray:
    """All-pairs hop counts (n BFS sweeps), int32, -1 for disconnected pairs.

    Materializing is quadratic in memory, so it is refused above cap;
    larger analyses stream per-source results instead.
    """
    if g.n > cap:
        raise ValueError(f"distance matrix for n={g.n} exceeds cap={cap}")
    out = np.empty((g.n, g.n), dtype=np.int32)
    for s in range(g.n):
        out[s] = single_source_distances(g, s)
    return out


def diameter(g: Graph) -> int:
    """Largest hop distance over all pairs. Raises on disconnected input."""
    if g.n <= 1:
        return 0
    best = 0
    for s in range(g.n):
        dist = single_source_distances(g, s)
        ecc = int(dist.max())
        if s == 0 and (dist == -1).any():
            raise ValueError("diameter is undefined on a disconnected graph")
        if ecc > best:
            best = ecc
    return best


def extract_one_geodesic(spd: ShortestPathData, target: int) -> list[int]:
    """One canonical geodesic source -> target.

    Walks the predecessor DAG from the target, always taking the
    smallest-index predecessor, so the same path comes back every time.
    """
    if not (0 <= target < len(spd.dist)):
        raise ValueError(f"target {target} out of range")
    if spd.dist[target] is None:
        raise ValueError(f"target {target} is unreachable from source {spd.source}")
    path = [target]
    v = target
    while v != spd.source:
        v = min(spd.preds[v])
        path.append(v)
    path.reverse()
    return path
