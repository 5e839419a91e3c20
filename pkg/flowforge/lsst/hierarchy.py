"""Hierarchical petal decomposition and the low-stretch spanning tree entry point."""

from __future__ import annotations

import math
from dataclasses import dataclass

from flowforge.core.config import settings
from flowforge.core.exceptions import DecompositionError, GraphError
from flowforge.core.logging import get_logger
from flowforge.graphs.types import SpanningTree, WeightedGraph, induced_subgraph
from flowforge.lsst.petal import DistanceSource, petal_decomposition

logger = get_logger()


def max_depth(n: int) -> int:
    """Recursion depth cap for a graph on ``n`` vertices."""
    return int(settings.LSST_DEPTH_FACTOR * math.log2(max(n, 1))) + settings.LSST_DEPTH_SLACK


@dataclass
class _Piece:
    graph: WeightedGraph
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]
    x0: int
    t: int
    depth: int


def hierarchical_petal_decomposition(
    G: WeightedGraph,
    x0: int,
    t: int,
    distance_source: DistanceSource | None = None,
    depth_cap: int | None = None,
) -> SpanningTree:
    """Build a spanning tree by recursive petal decomposition.

    Each petal recurses with its center as start and its target as target,
    the stigma with ``x0`` and the stigma target, all under the halved working
    weights. Parts are joined through the connector edge of each petal.

    Args:
        G: Connected graph
        x0: Start vertex
        t: Target vertex
        distance_source: See :func:`petal_decomposition`
        depth_cap: Recursion depth limit, defaults to :func:`max_depth`

    Returns:
        Spanning tree of ``G``

    Raises:
        GraphError: If ``G`` is disconnected
        DecompositionError: If the depth cap is exceeded
    """
    if not G.is_connected():
        raise GraphError(f"{G!r} is disconnected", "lsst_petal")
    cap = max_depth(G.n) if depth_cap is None else depth_cap
    tree: list[int] = []
    deepest = 0
    stack = [_Piece(G, tuple(range(G.n)), tuple(range(G.m)), x0, t, 0)]
    while stack:
        piece = stack.pop()
        if piece.graph.n == 1:
            continue
        if piece.depth >= cap:
            raise DecompositionError(
                f"Recursion depth {piece.depth} reached the cap {cap}", "lsst_petal"
            )
        deepest = max(deepest, piece.depth)
        dec = petal_decomposition(piece.graph, piece.x0, piece.t, distance_source)
        tree.extend(piece.edge_map[e] for e in dec.connectors)
        for vertices, start, target in dec.clusters:
            sub = induced_subgraph(piece.graph, vertices, dec.weights)
            local = sub.local_index()
            stack.append(
                _Piece(
                    sub.graph,
                    tuple(piece.vertex_map[v] for v in sub.vertices),
                    tuple(piece.edge_map[e] for e in sub.edge_ids),
                    local[start],
                    local[target],
                    piece.depth + 1,
                )
            )

    logger.debug("Hierarchical decomposition finished", n=G.n, m=G.m, depth=deepest)
    return SpanningTree.of(G, tree)


def lsst(
    G: WeightedGraph, x0: int = 0, distance_source: DistanceSource | None = None
) -> SpanningTree:
    """Low-stretch spanning tree of ``G`` rooted at ``x0`` (target ``x0``)."""
    return hierarchical_petal_decomposition(G, x0, x0, distance_source)
