"""Tests for heavy-light decomposition."""

from __future__ import annotations

import math

import pytest

from flowforge.bench.experiments import run_experiment
from flowforge.core.exceptions import InvalidInputError
from flowforge.graphs.generators import random_rooted_tree
from flowforge.graphs.types import RootedTreeArray
from flowforge.hld.decomposition import (
    HeavyChains,
    chain_intersection_stats,
    chain_intersections_naive,
    heavy_children,
    heavy_light_decomposition,
    subtree_sizes,
    validate_conditions,
)
from flowforge.schemas.experiment import ExperimentConfig

PATH4 = RootedTreeArray([[1], [2], [3], []])
STAR3 = RootedTreeArray([[1, 2, 3], [], [], []])
BINARY7 = RootedTreeArray([[1, 2], [3, 4], [5, 6], [], [], [], []])


class TestSubtreeSizes:
    """Tests for subtree_sizes."""

    def test_single_vertex(self) -> None:
        """Test a lone root has size 1."""
        assert subtree_sizes(RootedTreeArray([[]])) == [1]

    def test_path(self) -> None:
        """Test a path rooted at its end."""
        assert subtree_sizes(PATH4) == [4, 3, 2, 1]

    def test_random_tree_recursion(self) -> None:
        """Test sizes satisfy the recursive definition."""
        T = random_rooted_tree(200, seed=5)
        size = subtree_sizes(T)
        assert size[0] == 200
        assert all(size[v] == 1 + sum(size[c] for c in T.children[v]) for v in range(T.n))


class TestHeavyLightDecomposition:
    """Tests for heavy_light_decomposition."""

    def test_path_is_one_chain(self) -> None:
        """Test a path forms a single chain."""
        assert heavy_light_decomposition(PATH4).chains == ((0, 1, 2, 3),)

    def test_star_tie_break(self) -> None:
        """Test the smallest child continues the root chain."""
        C = heavy_light_decomposition(STAR3)
        assert C.chains[0] == (0, 1)
        assert sorted(C.chains[1:]) == [(2,), (3,)]
        assert heavy_children(STAR3) == [1, -1, -1, -1]

    def test_complete_binary_tree(self) -> None:
        """Test the seven-vertex binary tree splits into four left spines."""
        C = heavy_light_decomposition(BINARY7)
        assert len(C) == 4
        assert C.chains[0] == (0, 1, 3)
        assert set(C.chains[1:]) == {(4,), (2, 5), (6,)}

    def test_chains_follow_parent_links(self) -> None:
        """Test consecutive chain vertices are parent and child."""
        T = random_rooted_tree(300, seed=2)
        C = heavy_light_decomposition(T)
        for chain in C.chains:
            assert all(T.parent[b] == a for a, b in zip(chain, chain[1:]))
        assert all(C.chains[C.chain_of[v]].count(v) == 1 for v in range(T.n))


class TestChainIntersections:
    """Tests for chain_intersection_stats."""

    def test_path(self) -> None:
        """Test every path vertex meets one chain."""
        avg, counts = chain_intersection_stats(PATH4, heavy_light_decomposition(PATH4))
        assert avg == 1.0
        assert counts == [1, 1, 1, 1]

    def test_star(self) -> None:
        """Test the light leaves of a star meet two chains."""
        avg, counts = chain_intersection_stats(STAR3, heavy_light_decomposition(STAR3))
        assert counts == [1, 1, 2, 2]
        assert avg == 1.5

    def test_matches_naive_walk(self) -> None:
        """Test the recurrence agrees with the ancestor walk."""
        for seed in range(20):
            T = random_rooted_tree(150, seed)
            C = heavy_light_decomposition(T)
            assert chain_intersection_stats(T, C)[1] == chain_intersections_naive(T, C)

    def test_quotient_below_bound(self) -> None:
        """Test the average over ln n stays below 1.3 on random trees."""
        n = 256
        avgs = []
        for seed in range(50):
            T = random_rooted_tree(n, seed)
            avgs.append(chain_intersection_stats(T, heavy_light_decomposition(T))[0])
        assert sum(avgs) / len(avgs) / math.log(n) <= 1.3

    def test_mismatched_chains(self) -> None:
        """Test chains built for another tree are rejected."""
        with pytest.raises(InvalidInputError):
            chain_intersection_stats(PATH4, HeavyChains(((0,),), (0,)))


class TestValidateConditions:
    """Tests for validate_conditions."""

    def test_random_trees_pass(self) -> None:
        """Test random trees satisfy all three conditions."""
        for seed in range(100):
            T = random_rooted_tree(64, seed)
            assert validate_conditions(T, heavy_light_decomposition(T)).ok

    def test_detects_shared_child(self) -> None:
        """Test two children on the parent's chain are reported."""
        bad = HeavyChains(((0, 1, 2, 3),), (0, 0, 0, 0))
        report = validate_conditions(STAR3, bad)
        assert report.shared_children == 1
        assert not report.ok

    def test_detects_deep_path(self) -> None:
        """Test a root path through too many chains is reported."""
        singletons = HeavyChains(((0,), (1,), (2,), (3,)), (0, 1, 2, 3))
        report = validate_conditions(PATH4, singletons)
        assert report.deep_paths == 1
        assert report.shared_children == 0


@pytest.mark.slow
class TestIntersectionTrend:
    """Test the intersection quotient over the acceptance grid."""

    def test_quotients_decrease(self) -> None:
        """Test both quotients fall with n and the base-10 one starts near 1.276."""
        cfg = ExperimentConfig(name="hld-intersections", trials=500, timings=False)
        result = run_experiment(cfg)
        assert result.column("n") == [2**i for i in range(6, 13)]
        assert result.column("violations") == [0] * 7
        natural = result.column("quotient")
        decimal = result.column("quotient_log10")
        assert all(q <= 1.3 for q in natural)
        for column in (natural, decimal):
            assert all(b < a * 1.02 for a, b in zip(column, column[1:]))
            assert column[-1] < column[0]
        assert decimal[0] == pytest.approx(1.276, abs=0.1)
