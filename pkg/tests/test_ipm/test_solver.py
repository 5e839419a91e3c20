"""Tests for cycle selection, steps and the IPM loop."""

from __future__ import annotations

import numpy as np
import pytest

from flowforge.core.exceptions import GraphError, InfeasibleError, InvalidInputError
from flowforge.core.random import make_rng
from flowforge.graphs.types import SpanningTree
from flowforge.ipm import (
    best_fundamental_cycle,
    find_interior_flow,
    fundamental_cycles,
    generate_interior_instance,
    gradient,
    hidden_circulation_ratio,
    lengths,
    line_search_step,
    potential,
    solve,
    step,
    theorem_step,
)
from flowforge.oracle.mincost import optimal_cost
from flowforge.schemas.flow import FlowProblem, InteriorFlow

F0 = [1.5, 1.5, 0.5]


@pytest.fixture
def start(triangle_flow: FlowProblem) -> InteriorFlow:
    return InteriorFlow.of(triangle_flow, F0)


class TestFundamentalCycles:
    """Test cycle ranking."""

    @pytest.mark.parametrize("tree", [[0, 1], [1, 2], [0, 2]])
    def test_triangle_cycle(
        self, triangle_flow: FlowProblem, start: InteriorFlow, tree: list[int]
    ) -> None:
        """Test every tree yields the downhill cycle through the cheap path."""
        T = SpanningTree.of(triangle_flow.graph, tree)
        choice = best_fundamental_cycle(triangle_flow, T, start, 4.0)
        assert choice.delta.tolist() == [1, 1, -1]
        assert choice.ratio < 0
        np.testing.assert_allclose(triangle_flow.excess(choice.delta), 0.0)
        assert float(np.dot(gradient(triangle_flow, start, 4.0), choice.delta)) < 0

    def test_ratio_matches_definition(
        self, triangle_flow: FlowProblem, start: InteriorFlow
    ) -> None:
        """Test the ratio is -|<g, D>| / <l, |D|>."""
        T = SpanningTree.of(triangle_flow.graph, [0, 1])
        (choice,) = fundamental_cycles(triangle_flow, T, start, 4.0)
        g = gradient(triangle_flow, start, 4.0)
        ell = lengths(triangle_flow, start)
        expected = -abs(np.dot(g, choice.delta)) / np.dot(ell, np.abs(choice.delta))
        assert choice.ratio == pytest.approx(expected)
        assert choice.edge == 2

    def test_tree_has_no_cycles(self) -> None:
        """Test a tree instance has no fundamental cycle."""
        p = FlowProblem.build(2, [(0, 1)], c=[1], u_lo=[0], u_hi=[4], dem=[-2, 2])
        T = SpanningTree.of(p.graph, [0])
        with pytest.raises(GraphError):
            fundamental_cycles(p, T, np.array([2.0]), 0.0)

    def test_hidden_circulation_points_downhill(
        self, triangle_flow: FlowProblem, start: InteriorFlow
    ) -> None:
        """Test the direction to the optimum has a negative ratio."""
        ratio = hidden_circulation_ratio(triangle_flow, start, np.array([2.0, 2.0, 0.0]), 4.0)
        assert ratio < 0


class TestSteps:
    """Test single steps."""

    def test_theorem_step_improves(self, triangle_flow: FlowProblem, start: InteriorFlow) -> None:
        """Test the theorem step lowers the potential and keeps conservation."""
        delta = np.array([1, 1, -1])
        result = theorem_step(triangle_flow, start, delta, 0.9, 4.0)
        assert result.potential < potential(triangle_flow, start, 4.0)
        assert result.eta > 0
        InteriorFlow.of(triangle_flow, result.flow.f)
        np.testing.assert_allclose(step(triangle_flow, start, delta, 0.9, 4.0).f, result.flow.f)

    def test_orthogonal_direction(self, triangle_flow: FlowProblem, start: InteriorFlow) -> None:
        """Test a zero direction is rejected."""
        with pytest.raises(InvalidInputError):
            theorem_step(triangle_flow, start, np.zeros(3), 0.9, 4.0)

    def test_line_search_beats_theorem(
        self, triangle_flow: FlowProblem, start: InteriorFlow
    ) -> None:
        """Test the line search is at least as good as the theorem step."""
        delta = np.array([1, 1, -1])
        searched = line_search_step(triangle_flow, start, delta, 0.9, 4.0)
        plain = theorem_step(triangle_flow, start, delta, 0.9, 4.0)
        assert searched.potential <= plain.potential
        assert triangle_flow.cost_of(searched.flow.f) < triangle_flow.cost_of(F0)


class TestInteriorFlow:
    """Test interior starting points."""

    def test_triangle(self, triangle_flow: FlowProblem) -> None:
        """Test the found flow is strictly interior and meets demands."""
        flow = find_interior_flow(triangle_flow)
        InteriorFlow.of(triangle_flow, flow.f)

    def test_infeasible(self) -> None:
        """Test demands beyond the cut capacity are rejected."""
        p = FlowProblem.build(
            3, [(0, 1), (1, 2), (0, 2)], c=[1, 1, 5], u_lo=[0] * 3, u_hi=[3] * 3, dem=[-7, 0, 7]
        )
        with pytest.raises(InfeasibleError):
            find_interior_flow(p)

    def test_tight_bounds(self) -> None:
        """Test a flow forced onto a bound has no interior point."""
        p = FlowProblem.build(2, [(0, 1)], c=[1], u_lo=[0], u_hi=[2], dem=[-2, 2])
        with pytest.raises(InfeasibleError):
            find_interior_flow(p)


class TestGenerateInstance:
    """Test random interior instances."""

    def test_shape_and_interior(self) -> None:
        """Test edge count, bounds and the interior flow."""
        p, flow = generate_interior_instance(8, 5, U=20, C=10, seed=2)
        assert p.n == 8
        assert p.m == 12
        assert p.graph.is_connected()
        assert all(1 <= c <= 10 for c in p.c)
        assert max(map(abs, p.u_lo + p.u_hi)) <= 20
        InteriorFlow.of(p, flow.f)

    def test_signed_costs(self) -> None:
        """Test signed costs stay within [-C, C]."""
        p, _ = generate_interior_instance(10, 20, U=20, C=3, seed=5, signed_costs=True)
        assert all(-3 <= c <= 3 for c in p.c)

    def test_deterministic(self) -> None:
        """Test equal seeds give equal instances."""
        a, fa = generate_interior_instance(6, 4, U=10, C=5, seed=9)
        b, fb = generate_interior_instance(6, 4, U=10, C=5, seed=9)
        assert a.graph.edges == b.graph.edges
        assert (a.c, a.u_lo, a.u_hi, a.dem) == (b.c, b.u_lo, b.u_hi, b.dem)
        np.testing.assert_array_equal(fa.f, fb.f)

    @pytest.mark.parametrize("kwargs", [{"n": 1}, {"U": 1}, {"C": 0}, {"extra_edges": -1}])
    def test_bad_parameters(self, kwargs: dict[str, int]) -> None:
        """Test out-of-range parameters are rejected."""
        params = {"n": 5, "extra_edges": 2, "U": 10, "C": 5, "seed": 0} | kwargs
        with pytest.raises(InvalidInputError):
            generate_interior_instance(**params)


class TestSolve:
    """Test the potential-reduction loop."""

    def test_triangle_line_search(self, triangle_flow: FlowProblem, start: InteriorFlow) -> None:
        """Test the line-search rule reaches the optimum cost 4."""
        report = solve(triangle_flow, start, step_rule="line-search")
        assert report.termination == "optimal"
        assert report.F_star == 4.0
        assert report.final_cost == pytest.approx(4.0, abs=1e-3)
        assert len(report.potential_trace) == report.iterations + 1
        InteriorFlow.of(triangle_flow, report.final_flow)

    def test_triangle_theorem_rule(self, triangle_flow: FlowProblem, start: InteriorFlow) -> None:
        """Test the theorem rule decreases the potential every iteration."""
        report = solve(triangle_flow, start, max_iter=20, step_rule="theorem")
        assert report.termination == "max_iter"
        assert report.iterations == 20
        trace = report.potential_trace
        assert all(b < a for a, b in zip(trace, trace[1:]))
        assert report.final_cost < triangle_flow.cost_of(F0)

    def test_already_optimal(self, triangle_flow: FlowProblem) -> None:
        """Test a start within tolerance stops immediately."""
        report = solve(triangle_flow, InteriorFlow.of(triangle_flow, F0), F_star=5.5)
        assert report.termination == "optimal"
        assert report.iterations == 0

    def test_tree_is_trivial(self) -> None:
        """Test a tree instance has nothing to optimize."""
        p = FlowProblem.build(2, [(0, 1)], c=[1], u_lo=[0], u_hi=[4], dem=[-2, 2])
        report = solve(p, np.array([2.0]), F_star=0.0)
        assert report.termination == "trivial"

    def test_random_instance_progress(self) -> None:
        """Test the gap shrinks on a random instance."""
        p, flow = generate_interior_instance(6, 6, U=20, C=10, seed=11)
        F = float(optimal_cost(p))
        report = solve(p, flow, max_iter=200, F_star=F)
        assert report.final_cost >= F - 1e-6
        assert report.gap < p.cost_of(flow.f) - F or report.termination == "optimal"
        InteriorFlow.of(p, report.final_flow)

    def test_first_theorem_step_decrease(
        self, triangle_flow: FlowProblem, start: InteriorFlow
    ) -> None:
        """Test the first theorem step lowers the potential by at least kappa^2 / 1000."""
        report = solve(triangle_flow, start, max_iter=1, step_rule="theorem")
        first, second = report.potential_trace
        assert first - second >= report.kappa**2 * 1e-3


def _random_spanning_tree(p: FlowProblem, seed: int) -> list[int]:
    """Kruskal over a random edge order."""
    root = list(range(p.n))

    def find(x: int) -> int:
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    chosen = []
    for eid in make_rng(seed).permutation(p.m):
        e = p.graph.edges[int(eid)]
        a, b = find(e.u), find(e.v)
        if a != b:
            root[a] = b
            chosen.append(int(eid))
    return chosen


def _exhaustive_best_cycle(
    p: FlowProblem, tree: list[int], g: np.ndarray, ell: np.ndarray
) -> tuple[float, list[int]]:
    """Score both orientations of every fundamental cycle and keep the lowest ratio."""
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(p.n)]
    for eid in tree:
        e = p.graph.edges[eid]
        adj[e.u].append((e.v, eid, 1))
        adj[e.v].append((e.u, eid, -1))
    best_ratio, best_delta = np.inf, []
    for eid in range(p.m):
        if eid in tree:
            continue
        e = p.graph.edges[eid]
        back: dict[int, tuple[int, int, int]] = {}
        stack, seen = [e.v], {e.v}
        while stack:
            x = stack.pop()
            for y, t, s in adj[x]:
                if y not in seen:
                    seen.add(y)
                    back[y] = (x, t, s)
                    stack.append(y)
        delta = np.zeros(p.m, dtype=np.int64)
        delta[eid] = 1
        x = e.u
        while x != e.v:
            x, t, s = back[x]
            delta[t] = s
        for d in (delta, -delta):
            ratio = float(np.dot(g, d) / np.dot(ell, np.abs(d)))
            if ratio < best_ratio:
                best_ratio, best_delta = ratio, d.tolist()
    return best_ratio, best_delta


class TestCycleOracle:
    """Test cycle selection against exhaustive enumeration."""

    @pytest.mark.parametrize("seed", range(50))
    def test_matches_exhaustive_search(self, seed: int) -> None:
        """Test the chosen cycle is the best of all fundamental cycles on six vertices."""
        p, flow = generate_interior_instance(6, 4, U=20, C=10, seed=seed)
        F_star = float(optimal_cost(p)) - 1.0
        tree = _random_spanning_tree(p, seed)
        choice = best_fundamental_cycle(p, SpanningTree.of(p.graph, tree), flow, F_star)
        g = gradient(p, flow, F_star)
        ell = lengths(p, flow)
        ratio, delta = _exhaustive_best_cycle(p, tree, g, ell)
        assert choice.ratio == pytest.approx(ratio, rel=1e-9)
        assert choice.delta.tolist() == delta
        np.testing.assert_array_equal(p.excess(choice.delta), 0)


@pytest.mark.slow
class TestSolveAcceptance:
    """Test convergence against the exact oracle on random instances."""

    def test_matches_oracle_on_fifty_instances(self) -> None:
        """Test at least 48 of 50 solves land within 1e-3 relative of the optimum."""
        hits = 0
        for seed in range(50):
            n = 4 + seed % 9
            p, flow = generate_interior_instance(n, n, U=20, C=10, seed=seed)
            F = float(optimal_cost(p))
            report = solve(p, flow, F_star=F)
            trace = report.potential_trace
            assert all(b < a for a, b in zip(trace, trace[1:]))
            assert report.final_cost >= F - 1e-9
            if abs(report.final_cost - F) <= 1e-3 * max(1.0, abs(F)):
                hits += 1
        assert hits >= 48
