"""Tree distances and stretch of spanning trees."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable

from flowforge.core.exceptions import GraphError
from flowforge.graphs.types import SpanningTree, WeightedGraph, is_spanning_tree


class TreeMetric:
    """Weighted tree distances answered through binary-lifting LCA queries."""

    def __init__(self, G: WeightedGraph, tree_edges: Iterable[int], root: int = 0) -> None:
        ids = list(tree_edges)
        if not is_spanning_tree(G, ids):
            raise GraphError(
                f"{len(ids)} edges do not form a spanning tree of {G!r}", "graph_core"
            )
        n = G.n
        allowed = set(ids)
        parent = [root] * n
        depth = [0] * n
        self.dist = [0.0] * n
        seen = [False] * n
        seen[root] = True
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, eid in G.adjacency[x]:
                if eid in allowed and not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    self.dist[y] = self.dist[x] + G.edges[eid].w
                    queue.append(y)
        self.depth = depth
        self.up = [parent]
        for _ in range(max(1, (n - 1).bit_length())):
            prev = self.up[-1]
            self.up.append([prev[prev[v]] for v in range(n)])

    def lca(self, a: int, b: int) -> int:
        if self.depth[a] < self.depth[b]:
            a, b = b, a
        diff = self.depth[a] - self.depth[b]
        level = 0
        while diff:
            if diff & 1:
                a = self.up[level][a]
            diff >>= 1
            level += 1
        if a == b:
            return a
        for table in reversed(self.up):
            if table[a] != table[b]:
                a, b = table[a], table[b]
        return self.up[0][a]

    def distance(self, a: int, b: int) -> float:
        return self.dist[a] + self.dist[b] - 2.0 * self.dist[self.lca(a, b)]


def _tree_ids(T: SpanningTree | Iterable[int]) -> list[int]:
    return list(T.edge_ids) if isinstance(T, SpanningTree) else list(T)


def edge_stretches(G: WeightedGraph, T: SpanningTree | Iterable[int]) -> list[float]:
    """Per-edge stretch ``d_T(u, v) / w(u, v)`` in edge-id order."""
    metric = TreeMetric(G, _tree_ids(T))
    return [metric.distance(e.u, e.v) / e.w for e in G.edges]


def stretch(G: WeightedGraph, T: SpanningTree | Iterable[int]) -> float:
    """Total stretch of a spanning tree over all graph edges.

    Raises:
        GraphError: If ``T`` is not a spanning tree of ``G``
    """
    return float(sum(edge_stretches(G, T)))
