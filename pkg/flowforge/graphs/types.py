"""Graph and tree representations shared by every component."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from flowforge.core.exceptions import GraphError, InvalidInputError


class Edge(NamedTuple):
    """Undirected edge; the stored ``(u, v)`` order is its implicit direction."""

    u: int
    v: int
    w: float


class WeightedGraph:
    """Undirected weighted graph with dense edge ids ``0..m-1``.

    Instances are treated as immutable; reweighting produces a new graph via
    :meth:`with_weights`.
    """

    __slots__ = ("n", "edges", "adjacency")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, float]] = ()) -> None:
        if n < 0:
            raise InvalidInputError(f"Vertex count must be nonnegative, got {n}", "graph_core")
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(Edge(int(u), int(v), float(w)) for u, v, w in edges)
        self.adjacency: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for eid, (u, v, w) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(
                    f"Edge {eid} ({u}, {v}) out of range for n={n}", "graph_core"
                )
            if u == v:
                raise InvalidInputError(f"Edge {eid} is a self-loop at {u}", "graph_core")
            if not w > 0:
                raise InvalidInputError(f"Edge {eid} has nonpositive weight {w}", "graph_core")
            self.adjacency[u].append((v, eid))
            self.adjacency[v].append((u, eid))

    @property
    def m(self) -> int:
        return len(self.edges)

    def weights(self) -> list[float]:
        return [e.w for e in self.edges]

    def with_weights(self, weights: Sequence[float]) -> WeightedGraph:
        """Return a copy of the graph carrying new per-edge weights."""
        if len(weights) != self.m:
            raise InvalidInputError(
                f"Expected {self.m} weights, got {len(weights)}", "graph_core"
            )
        return WeightedGraph(self.n, ((e.u, e.v, w) for e, w in zip(self.edges, weights)))

    def other(self, eid: int, x: int) -> int:
        """Endpoint of edge ``eid`` opposite to ``x``."""
        e = self.edges[eid]
        return e.v if e.u == x else e.u

    def component_labels(self, edge_ids: Iterable[int] | None = None) -> list[int]:
        """Label connected components, optionally restricted to a subset of edges."""
        allowed = None if edge_ids is None else set(edge_ids)
        label = [-1] * self.n
        current = 0
        for start in range(self.n):
            if label[start] != -1:
                continue
            label[start] = current
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y, eid in self.adjacency[x]:
                    if label[y] == -1 and (allowed is None or eid in allowed):
                        label[y] = current
                        queue.append(y)
            current += 1
        return label

    def is_connected(self) -> bool:
        return self.n <= 1 or max(self.component_labels()) == 0

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class InducedSubgraph:
    """Subgraph induced by a vertex subset, with maps back to the parent graph."""

    graph: WeightedGraph
    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]

    def local_index(self) -> dict[int, int]:
        return {g: i for i, g in enumerate(self.vertices)}


def induced_subgraph(
    G: WeightedGraph, vertices: Iterable[int], weights: Sequence[float] | None = None
) -> InducedSubgraph:
    """Build the subgraph of ``G`` induced by ``vertices``.

    Local vertex ids follow the ascending order of the global ids, so smallest-id
    tie breaking is preserved. Local edge ids follow global edge-id order.

    Args:
        G: Parent graph
        vertices: Vertex subset
        weights: Optional per-edge weights of ``G`` overriding the stored ones

    Returns:
        The induced subgraph together with vertex and edge maps
    """
    verts = tuple(sorted(set(vertices)))
    local = {g: i for i, g in enumerate(verts)}
    ws = G.weights() if weights is None else weights
    kept: list[int] = []
    local_edges: list[tuple[int, int, float]] = []
    for eid, e in enumerate(G.edges):
        if e.u in local and e.v in local:
            kept.append(eid)
            local_edges.append((local[e.u], local[e.v], ws[eid]))
    return InducedSubgraph(WeightedGraph(len(verts), local_edges), verts, tuple(kept))


class RootedTreeArray:
    """Rooted tree given by per-vertex child lists, rooted at vertex 0.

    Every parent index is smaller than its child index.
    """

    __slots__ = ("children", "parent")

    def __init__(self, children: Sequence[Sequence[int]]) -> None:
        n = len(children)
        if n == 0:
            raise InvalidInputError("A rooted tree needs at least one vertex", "graph_core")
        self.children: tuple[tuple[int, ...], ...] = tuple(tuple(c) for c in children)
        self.parent = [-1] * n
        links = 0
        for p, kids in enumerate(self.children):
            for c in kids:
                if not (0 <= c < n) or c <= p:
                    raise InvalidInputError(
                        f"Child {c} of {p} must satisfy parent < child < n", "graph_core"
                    )
                if self.parent[c] != -1:
                    raise InvalidInputError(f"Vertex {c} has two parents", "graph_core")
                self.parent[c] = p
                links += 1
        if links != n - 1:
            raise InvalidInputError(
                f"Expected {n - 1} parent links, found {links}", "graph_core"
            )

    @classmethod
    def from_parents(cls, parents: Sequence[int]) -> RootedTreeArray:
        """Build from a parent array where ``parents[k]`` is the parent of ``k + 1``."""
        children: list[list[int]] = [[] for _ in range(len(parents) + 1)]
        for k, p in enumerate(parents, start=1):
            children[int(p)].append(k)
        return cls(children)

    @property
    def n(self) -> int:
        return len(self.children)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootedTreeArray) and self.children == other.children

    def __hash__(self) -> int:
        return hash(self.children)

    def __repr__(self) -> str:
        return f"RootedTreeArray(n={self.n})"


@dataclass(frozen=True)
class SpanningTree:
    """Edge-id subset of a graph forming a spanning tree."""

    graph: WeightedGraph
    edge_ids: tuple[int, ...]

    @classmethod
    def of(cls, G: WeightedGraph, edge_ids: Iterable[int]) -> SpanningTree:
        """Validate and wrap a spanning edge set.

        Raises:
            GraphError: If the edges do not form a spanning tree of ``G``
        """
        ids = tuple(sorted(set(edge_ids)))
        if not is_spanning_tree(G, ids):
            raise GraphError(f"{len(ids)} edges do not span {G!r} as a tree", "graph_core")
        return cls(G, ids)

    def __len__(self) -> int:
        return len(self.edge_ids)


def is_spanning_tree(G: WeightedGraph, T: Iterable[int]) -> bool:
    """Check that ``T`` has ``n - 1`` distinct edges and connects every vertex."""
    ids = list(T)
    if len(ids) != max(G.n - 1, 0) or len(set(ids)) != len(ids):
        return False
    if any(not (0 <= eid < G.m) for eid in ids):
        return False
    return G.n == 0 or max(G.component_labels(ids)) == 0
