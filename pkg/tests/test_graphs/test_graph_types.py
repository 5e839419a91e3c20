"""Tests for graph and tree representations."""

from __future__ import annotations

import pytest

from flowforge.core.exceptions import GraphError, InvalidInputError
from flowforge.graphs.types import (
    RootedTreeArray,
    SpanningTree,
    WeightedGraph,
    induced_subgraph,
    is_spanning_tree,
)


class TestWeightedGraph:
    """Tests for WeightedGraph construction and queries."""

    def test_adjacency_lists_both_directions(self, triangle: WeightedGraph) -> None:
        """Test every edge appears in both endpoint lists."""
        assert triangle.m == 3
        assert sorted(triangle.adjacency[0]) == [(1, 0), (2, 2)]
        assert sorted(triangle.adjacency[2]) == [(0, 2), (1, 1)]

    def test_rejects_self_loop(self) -> None:
        """Test self-loops are rejected."""
        with pytest.raises(InvalidInputError, match="self-loop"):
            WeightedGraph(2, [(1, 1, 1.0)])

    def test_rejects_nonpositive_weight(self) -> None:
        """Test zero and negative weights are rejected."""
        with pytest.raises(InvalidInputError):
            WeightedGraph(2, [(0, 1, 0.0)])
        with pytest.raises(InvalidInputError):
            WeightedGraph(2, [(0, 1, -2.0)])

    def test_rejects_out_of_range_endpoint(self) -> None:
        """Test endpoints must be valid vertex ids."""
        with pytest.raises(InvalidInputError, match="out of range"):
            WeightedGraph(2, [(0, 2, 1.0)])

    def test_parallel_edges_allowed(self) -> None:
        """Test parallel edges keep distinct ids."""
        G = WeightedGraph(2, [(0, 1, 1.0), (1, 0, 2.0)])
        assert G.m == 2
        assert G.other(1, 1) == 0

    def test_with_weights_keeps_structure(self, triangle: WeightedGraph) -> None:
        """Test reweighting keeps endpoints and replaces weights."""
        H = triangle.with_weights([2.0, 3.0, 4.0])
        assert [(e.u, e.v) for e in H.edges] == [(e.u, e.v) for e in triangle.edges]
        assert H.weights() == [2.0, 3.0, 4.0]
        assert triangle.weights() == [1.0, 1.0, 1.0]

    def test_with_weights_length_mismatch(self, triangle: WeightedGraph) -> None:
        """Test a wrong number of weights is rejected."""
        with pytest.raises(InvalidInputError):
            triangle.with_weights([1.0])

    def test_connectivity(self) -> None:
        """Test connectivity of connected and split graphs."""
        assert WeightedGraph(1).is_connected()
        assert not WeightedGraph(3, [(0, 1, 1.0)]).is_connected()
        assert WeightedGraph(3, [(0, 1, 1.0)]).component_labels() == [0, 0, 1]


class TestInducedSubgraph:
    """Tests for induced_subgraph."""

    def test_local_ids_follow_global_order(self, k5: WeightedGraph) -> None:
        """Test local vertex ids follow ascending global ids."""
        sub = induced_subgraph(k5, [4, 1, 3])
        assert sub.vertices == (1, 3, 4)
        assert sub.local_index() == {1: 0, 3: 1, 4: 2}
        assert sub.graph.m == 3

    def test_edge_map_and_weight_override(self, triangle: WeightedGraph) -> None:
        """Test edge ids map back to the parent and weights can be overridden."""
        sub = induced_subgraph(triangle, [1, 2], weights=[5.0, 6.0, 7.0])
        assert sub.edge_ids == (1,)
        assert sub.graph.edges[0].w == 6.0


class TestRootedTreeArray:
    """Tests for RootedTreeArray validation."""

    def test_from_parents(self) -> None:
        """Test building from a parent array."""
        T = RootedTreeArray.from_parents([0, 0, 1])
        assert T.children == ((1, 2), (3,), (), ())
        assert T.parent == [-1, 0, 0, 1]

    def test_rejects_parent_after_child(self) -> None:
        """Test a child must have a larger id than its parent."""
        with pytest.raises(InvalidInputError):
            RootedTreeArray([[], [0]])

    def test_rejects_two_parents(self) -> None:
        """Test a vertex cannot have two parents."""
        with pytest.raises(InvalidInputError, match="two parents"):
            RootedTreeArray([[1, 2], [2], []])

    def test_rejects_missing_link(self) -> None:
        """Test every non-root vertex needs a parent."""
        with pytest.raises(InvalidInputError):
            RootedTreeArray([[1], [], []])

    def test_equality(self) -> None:
        """Test trees compare by child lists."""
        assert RootedTreeArray([[1], []]) == RootedTreeArray.from_parents([0])


class TestSpanningTree:
    """Tests for is_spanning_tree and SpanningTree."""

    def test_two_edges_of_triangle(self, triangle: WeightedGraph) -> None:
        """Test two triangle edges form a spanning tree."""
        assert is_spanning_tree(triangle, [0, 1])

    def test_three_edges_of_triangle(self, triangle: WeightedGraph) -> None:
        """Test the full triangle is not a tree."""
        assert not is_spanning_tree(triangle, [0, 1, 2])

    def test_duplicate_and_invalid_ids(self, triangle: WeightedGraph) -> None:
        """Test duplicate and out-of-range ids are rejected."""
        assert not is_spanning_tree(triangle, [0, 0])
        assert not is_spanning_tree(triangle, [0, 7])

    def test_disconnected_subset(self, cycle4: WeightedGraph) -> None:
        """Test n-1 edges that leave a vertex out are rejected."""
        G = WeightedGraph(4, [*((e.u, e.v, e.w) for e in cycle4.edges), (0, 2, 1.0)])
        assert not is_spanning_tree(G, [0, 1, 4])

    def test_of_validates(self, triangle: WeightedGraph) -> None:
        """Test SpanningTree.of sorts ids and raises on invalid sets."""
        assert SpanningTree.of(triangle, [2, 0]).edge_ids == (0, 2)
        with pytest.raises(GraphError):
            SpanningTree.of(triangle, [0])
