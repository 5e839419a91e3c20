"""Cone digraphs, single petals and one level of petal decomposition."""

from __future__ import annotations

import heapq
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal

from flowforge.core.config import settings
from flowforge.core.exceptions import DecompositionError, GraphError, InvalidInputError
from flowforge.core.logging import get_logger
from flowforge.graphs.paths import INF, ShortestPaths, dijkstra, graph_radius, path_to
from flowforge.graphs.types import WeightedGraph

logger = get_logger()

DistanceSource = Literal["remainder", "original"]


def _tol(scale: float) -> float:
    return 1e-9 * max(1.0, scale)


class ConeDigraph:
    """Directed reweighting of a graph by shortest-path distances from a center.

    Edge ``e = (u, v)`` yields arc ``2e`` (u to v) with length
    ``w + d(u) - d(v)`` and arc ``2e + 1`` (v to u) with length
    ``w + d(v) - d(u)``. Lengths are clamped at zero against rounding.
    """

    def __init__(
        self,
        G: WeightedGraph,
        paths: ShortestPaths,
        weights: Sequence[float] | None = None,
        alive: Sequence[bool] | None = None,
    ) -> None:
        self.graph = G
        self.paths = paths
        self.weights = G.weights() if weights is None else list(weights)
        self.alive = alive
        self.overrides: dict[int, float] = {}

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def root(self) -> int:
        return self.paths.source

    def arc_id(self, x: int, eid: int) -> int:
        """Arc id of edge ``eid`` traversed out of ``x``."""
        return 2 * eid if self.graph.edges[eid].u == x else 2 * eid + 1

    def length(self, x: int, y: int, eid: int) -> float:
        aid = self.arc_id(x, eid)
        if aid in self.overrides:
            return self.overrides[aid]
        d = self.paths.dist
        return max(0.0, self.weights[eid] + d[x] - d[y])

    def arcs(self) -> list[tuple[int, int, float, int]]:
        """Materialize ``(tail, head, length, edge id)`` in arc-id order."""
        out: list[tuple[int, int, float, int]] = []
        for eid, e in enumerate(self.graph.edges):
            if self.alive is not None and not (self.alive[e.u] and self.alive[e.v]):
                continue
            out.append((e.u, e.v, self.length(e.u, e.v, eid), eid))
            out.append((e.v, e.u, self.length(e.v, e.u, eid), eid))
        return out

    def ball(self, center: int, radius: float) -> set[int]:
        """Vertices within directed distance ``radius`` of ``center``."""
        dist = {center: 0.0}
        done: set[int] = set()
        heap: list[tuple[float, int]] = [(0.0, center)]
        limit = radius + _tol(radius)
        while heap:
            d, x = heapq.heappop(heap)
            if x in done:
                continue
            done.add(x)
            for y, eid in self.graph.adjacency[x]:
                if y in done or (self.alive is not None and not self.alive[y]):
                    continue
                nd = d + self.length(x, y, eid)
                if nd <= limit and nd < dist.get(y, INF):
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
        return done


def cone_digraph(Y: WeightedGraph, x0: int) -> ConeDigraph:
    """Build the cone digraph of ``Y`` around ``x0``.

    Raises:
        GraphError: If ``Y`` is disconnected
    """
    paths = dijkstra(Y, x0)
    if any(d == INF for d in paths.dist):
        raise GraphError(f"{Y!r} is disconnected", "lsst_petal")
    return ConeDigraph(Y, paths)


@dataclass(frozen=True)
class Petal:
    """A carved petal with its center and the ``x0``-to-target path."""

    vertices: frozenset[int]
    center: int
    path: tuple[int, ...]

    @property
    def target(self) -> int:
        return self.path[-1]


def _carve(cone: ConeDigraph, t: int, r: float) -> Petal:
    G, sp = cone.graph, cone.paths
    path = path_to(G, sp, t)

    # Furthest path vertex from t within path distance r.
    limit = r + _tol(r)
    idx = len(path) - 1
    walked = 0.0
    for i in range(len(path) - 1, 0, -1):
        step = cone.weights[sp.pred[path[i]]]
        if walked + step > limit:
            break
        walked += step
        idx = i - 1
    center = path[idx]

    # Arcs of the t-to-center segment drop to half their graph weight.
    cone.overrides.clear()
    for i in range(idx + 1, len(path)):
        eid = sp.pred[path[i]]
        cone.overrides[cone.arc_id(path[i], eid)] = cone.weights[eid] / 2.0

    members = cone.ball(t, r / 2.0)
    members.update(path[idx:])
    # Shortest-path-tree descendants reach the petal along zero-length arcs.
    for v in sp.order:
        if v != sp.source and G.other(sp.pred[v], v) in members:
            members.add(v)
    cone.overrides.clear()
    return Petal(frozenset(members), center, tuple(path))


def create_petal(Y: WeightedGraph, x0: int, t: int, r: float) -> Petal:
    """Carve the petal of target ``t`` with radius parameter ``r``.

    Runs Dijkstra from ``x0``, walks the ``x0``-``t`` path back from ``t`` to
    the furthest vertex within distance ``r`` (the center), halves the cone
    arcs of the ``t``-to-center segment and returns the cone ball of radius
    ``r / 2`` around ``t``.

    Args:
        Y: Connected graph
        x0: Decomposition center
        t: Petal target
        r: Radius parameter, nonnegative

    Returns:
        The petal vertex set, its center and the ``x0``-``t`` path

    Raises:
        InvalidInputError: If ``r`` is negative or a vertex is out of range
        GraphError: If ``t`` is unreachable from ``x0``
    """
    if r < 0:
        raise InvalidInputError(f"Radius must be nonnegative, got {r}", "lsst_petal")
    if not (0 <= x0 < Y.n and 0 <= t < Y.n):
        raise InvalidInputError(f"Vertices ({x0}, {t}) out of range for {Y!r}", "lsst_petal")
    return _carve(ConeDigraph(Y, dijkstra(Y, x0)), t, r)


@dataclass
class PetalDecomposition:
    """Petals carved around ``x0`` plus the stigma, stored last in ``Xs``."""

    x0: int
    radius: float
    Xs: list[frozenset[int]] = field(default_factory=list)
    xs: list[int] = field(default_factory=list)
    ts: list[int] = field(default_factory=list)
    ys: list[int] = field(default_factory=list)
    connectors: list[int] = field(default_factory=list)
    special_first: bool = False
    stigma_target: int = -1
    weights: list[float] = field(default_factory=list)

    @property
    def petals(self) -> list[frozenset[int]]:
        return self.Xs[:-1]

    @property
    def stigma(self) -> frozenset[int]:
        return self.Xs[-1]

    @property
    def clusters(self) -> list[tuple[frozenset[int], int, int]]:
        """Every part with the start and target its recursion uses."""
        parts = list(zip(self.petals, self.xs, self.ts))
        parts.append((self.stigma, self.x0, self.stigma_target))
        return parts


def petal_decomposition(
    G: WeightedGraph,
    x0: int,
    t: int,
    distance_source: DistanceSource | None = None,
) -> PetalDecomposition:
    """Split ``G`` into petals and a stigma around ``x0``.

    With radius ``R`` from ``x0``, a special first petal targeting ``t`` is
    carved when ``d(x0, t) > 5R/8``. Petals are then carved, radius ``R/8``,
    around the smallest-id vertex at distance at least ``3R/4`` until none is
    left. After each carve the working weights of the path edges from the
    petal center to its target are halved; recursion on the parts uses them.

    Args:
        G: Connected graph
        x0: Center, kept in the stigma
        t: Target, carried by the special petal or the stigma
        distance_source: ``"remainder"`` recomputes distances on what is left
            of the graph, ``"original"`` uses distances in ``G``

    Returns:
        The decomposition

    Raises:
        DecompositionError: If a petal would swallow ``x0``
        GraphError: If ``G`` is disconnected
    """
    source = settings.LSST_DISTANCE_SOURCE if distance_source is None else distance_source
    n = G.n
    if not (0 <= x0 < n and 0 <= t < n):
        raise DecompositionError(f"Start {x0} or target {t} missing from {G!r}", "lsst_petal")
    weights = G.weights()
    if n == 1:
        return PetalDecomposition(
            x0, 0.0, Xs=[frozenset({x0})], stigma_target=x0, weights=weights
        )

    R = graph_radius(G, x0)
    original = dijkstra(G, x0).dist
    alive = [True] * n
    dec = PetalDecomposition(x0, R, weights=weights)

    def carve(sp: ShortestPaths, target: int) -> None:
        petal = _carve(ConeDigraph(G, sp, weights, alive), target, R / 8.0)
        if x0 in petal.vertices:
            raise DecompositionError(f"Petal of target {target} contains x0={x0}", "lsst_petal")
        path = petal.path
        idx = path.index(petal.center)
        dec.Xs.append(petal.vertices)
        dec.xs.append(petal.center)
        dec.ts.append(target)
        dec.ys.append(path[idx - 1])
        dec.connectors.append(sp.pred[petal.center])
        for v in path[idx + 1 :]:
            weights[sp.pred[v]] /= 2.0
        for v in petal.vertices:
            alive[v] = False

    threshold = 0.75 * R - _tol(R)
    if t != x0 and original[t] > 0.625 * R + _tol(R):
        carve(dijkstra(G, x0, weights, alive), t)
        dec.special_first = True

    while True:
        sp = dijkstra(G, x0, weights, alive)
        dist = sp.dist if source == "remainder" else original
        target = next(
            (v for v in range(n) if alive[v] and dist[v] >= threshold and sp.reachable(v)),
            None,
        )
        if target is None:
            break
        carve(sp, target)

    stigma = frozenset(v for v in range(n) if alive[v])
    dec.Xs.append(stigma)
    dec.stigma_target = t if t in stigma else x0
    logger.debug(
        "Petal decomposition finished",
        n=n,
        radius=R,
        petals=len(dec.xs),
        stigma=len(stigma),
        special_first=dec.special_first,
    )
    return dec
