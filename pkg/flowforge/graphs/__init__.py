"""Graph representations, generators, shortest paths and stretch."""

from flowforge.graphs.generators import erdos_renyi, erdos_renyi_with_attempts, random_rooted_tree
from flowforge.graphs.paths import ShortestPaths, dijkstra, graph_radius, path_to
from flowforge.graphs.stretch import TreeMetric, edge_stretches, stretch
from flowforge.graphs.types import (
    RootedTreeArray,
    SpanningTree,
    WeightedGraph,
    induced_subgraph,
    is_spanning_tree,
)

__all__ = [
    "RootedTreeArray",
    "ShortestPaths",
    "SpanningTree",
    "TreeMetric",
    "WeightedGraph",
    "dijkstra",
    "edge_stretches",
    "erdos_renyi",
    "erdos_renyi_with_attempts",
    "graph_radius",
    "induced_subgraph",
    "is_spanning_tree",
    "path_to",
    "random_rooted_tree",
    "stretch",
]
