"""Single-source shortest paths with deterministic tie breaking."""

from __future__ import annotations

import heapq
import math
from collections.abc import Sequence
from dataclasses import dataclass

from flowforge.core.exceptions import GraphError, InvalidInputError
from flowforge.graphs.types import WeightedGraph

INF = math.inf


@dataclass(frozen=True)
class ShortestPaths:
    """Dijkstra output: distances, predecessor edge ids (-1 for none) and pop order."""

    source: int
    dist: list[float]
    pred: list[int]
    order: list[int]

    def reachable(self, v: int) -> bool:
        return self.dist[v] < INF


def dijkstra(
    G: WeightedGraph,
    src: int,
    weights: Sequence[float] | None = None,
    alive: Sequence[bool] | None = None,
) -> ShortestPaths:
    """Shortest-path distances from ``src`` over nonnegative weights.

    The heap is keyed by ``(distance, vertex)`` so equal distances pop the
    smaller vertex id first, and predecessors only change on strict improvement.
    Unreachable vertices (and vertices outside ``alive``) get distance ``inf``.

    Args:
        G: Graph to search
        src: Source vertex
        weights: Per-edge weights overriding the stored ones
        alive: Vertex mask restricting the search to an induced subgraph

    Returns:
        Distances, predecessor edge ids and settling order
    """
    n = G.n
    if not 0 <= src < n:
        raise InvalidInputError(f"Source {src} out of range for n={n}", "graph_core")
    if alive is not None and not alive[src]:
        raise InvalidInputError(f"Source {src} is not in the searched subgraph", "graph_core")
    ws = G.weights() if weights is None else weights
    dist = [INF] * n
    pred = [-1] * n
    done = [False] * n
    order: list[int] = []
    dist[src] = 0.0
    heap: list[tuple[float, int]] = [(0.0, src)]
    while heap:
        d, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        order.append(x)
        for y, eid in G.adjacency[x]:
            if done[y] or (alive is not None and not alive[y]):
                continue
            nd = d + ws[eid]
            if nd < dist[y]:
                dist[y] = nd
                pred[y] = eid
                heapq.heappush(heap, (nd, y))
    return ShortestPaths(src, dist, pred, order)


def path_to(G: WeightedGraph, sp: ShortestPaths, v: int) -> list[int]:
    """Vertex sequence of the shortest path from ``sp.source`` to ``v``.

    Raises:
        GraphError: If ``v`` is unreachable
    """
    if not sp.reachable(v):
        raise GraphError(f"Vertex {v} unreachable from {sp.source}", "graph_core")
    path = [v]
    while path[-1] != sp.source:
        x = path[-1]
        path.append(G.other(sp.pred[x], x))
    path.reverse()
    return path


def graph_radius(G: WeightedGraph, x0: int, weights: Sequence[float] | None = None) -> float:
    """Largest shortest-path distance from ``x0``.

    Raises:
        GraphError: If ``G`` is disconnected
    """
    radius = max(dijkstra(G, x0, weights).dist)
    if radius == INF:
        raise GraphError(f"{G!r} is disconnected", "graph_core")
    return radius
