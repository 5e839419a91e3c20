"""Tests for feasibility and exact min-cost flow."""

from __future__ import annotations

import networkx as nx
import numpy as np
import pytest

from flowforge.core.exceptions import InfeasibleError, InstanceTooLargeError
from flowforge.oracle import (
    brute_force_min_cost,
    feasible_flow,
    is_feasible,
    optimal_cost,
    ssp_min_cost,
)
from flowforge.schemas.flow import FlowProblem


def _random_instance(
    n: int, m: int, seed: int, signed: bool = True, feasible: bool = True
) -> FlowProblem:
    """Distinct ordered arcs; demands come from a random in-bounds flow when feasible."""
    rng = np.random.default_rng(seed)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    arcs = [pairs[k] for k in rng.choice(len(pairs), size=m, replace=False).tolist()]
    lo = rng.integers(-2, 1, size=m) if signed else np.zeros(m, dtype=np.int64)
    hi = lo + rng.integers(1, 5, size=m)
    c = rng.integers(-3, 4, size=m) if signed else rng.integers(0, 6, size=m)
    if feasible:
        x = [int(rng.integers(a, b + 1)) for a, b in zip(lo.tolist(), hi.tolist())]
        dem = [0] * n
        for (u, v), f in zip(arcs, x):
            dem[v] += f
            dem[u] -= f
    else:
        dem = [-9, *([0] * (n - 2)), 9]
    return FlowProblem.build(n, arcs, c.tolist(), lo.tolist(), hi.tolist(), dem)


class TestFeasibleFlow:
    """Test feasibility."""

    def test_triangle(self, triangle_flow: FlowProblem) -> None:
        """Test a feasible flow meets bounds and demands."""
        flow = feasible_flow(triangle_flow)
        assert flow is not None
        assert all(0 <= x <= 3 for x in flow)
        np.testing.assert_allclose(triangle_flow.excess(flow), triangle_flow.dem)

    def test_over_capacity(self, triangle_flow: FlowProblem) -> None:
        """Test demands beyond the cut are infeasible."""
        p = triangle_flow.model_copy(update={"dem": [-7, 0, 7]})
        assert feasible_flow(p) is None
        assert not is_feasible(p)

    def test_custom_bounds(self, triangle_flow: FlowProblem) -> None:
        """Test explicit bounds replace the instance bounds."""
        assert feasible_flow(triangle_flow, [0, 0, 0], [1, 1, 0]) is None
        flow = feasible_flow(triangle_flow, [0.5, 0.5, 0.5], [2.5, 2.5, 2.5], tol=1e-12)
        assert flow is not None
        assert all(0.5 <= x <= 2.5 for x in flow)

    def test_lower_bounds_force_circulation(self) -> None:
        """Test positive lower bounds on a cycle with zero demand."""
        p = FlowProblem.build(
            3, [(0, 1), (1, 2), (2, 0)], c=[1, 1, 1], u_lo=[1, 0, 0], u_hi=[2, 2, 2], dem=[0, 0, 0]
        )
        flow = feasible_flow(p)
        assert flow is not None
        assert flow[0] == flow[1] == flow[2] >= 1


class TestSuccessiveShortestPaths:
    """Test exact min-cost flow."""

    def test_triangle(self, triangle_flow: FlowProblem) -> None:
        """Test the cheap two-hop path carries everything."""
        result = ssp_min_cost(triangle_flow)
        assert result.feasible
        assert result.flow == (2, 2, 0)
        assert result.cost == 4
        assert optimal_cost(triangle_flow) == 4

    def test_negative_cycle(self) -> None:
        """Test a negative-cost cycle is saturated."""
        p = FlowProblem.build(
            3,
            [(0, 1), (1, 2), (2, 0)],
            c=[-1, -1, 1],
            u_lo=[0, 0, 0],
            u_hi=[2, 3, 4],
            dem=[0, 0, 0],
        )
        result = ssp_min_cost(p)
        assert result.flow == (2, 2, 2)
        assert result.cost == -2

    def test_infeasible(self, triangle_flow: FlowProblem) -> None:
        """Test infeasible instances report it and optimal_cost raises."""
        p = triangle_flow.model_copy(update={"dem": [-7, 0, 7]})
        assert not ssp_min_cost(p).feasible
        with pytest.raises(InfeasibleError):
            optimal_cost(p)

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_networkx(self, seed: int) -> None:
        """Test optimal costs agree with networkx on nonnegative instances."""
        p = _random_instance(6, 12, seed, signed=False)
        G = nx.DiGraph()
        for v, d in enumerate(p.dem):
            G.add_node(v, demand=d)
        for (u, v, _), c, hi in zip(p.graph.edges, p.c, p.u_hi):
            G.add_edge(u, v, weight=c, capacity=hi)
        assert optimal_cost(p) == nx.min_cost_flow_cost(G)

    @pytest.mark.parametrize("seed", range(200))
    def test_matches_brute_force(self, seed: int) -> None:
        """Test signed instances with lower bounds against enumeration."""
        n = 3 + seed % 4
        p = _random_instance(n, n + 3, seed, feasible=seed % 5 != 0)
        exact = ssp_min_cost(p)
        brute = brute_force_min_cost(p)
        assert exact.feasible == brute.feasible
        assert exact.cost == brute.cost
        if exact.flow is not None:
            assert p.cost_of(exact.flow) == exact.cost
            np.testing.assert_allclose(p.excess(exact.flow), p.dem)


class TestBruteForce:
    """Test the enumeration oracle."""

    def test_triangle(self, triangle_flow: FlowProblem) -> None:
        """Test the triangle optimum."""
        assert brute_force_min_cost(triangle_flow).cost == 4

    def test_too_large(self) -> None:
        """Test instances beyond the size limits are refused."""
        p = _random_instance(7, 8, 0)
        with pytest.raises(InstanceTooLargeError):
            brute_force_min_cost(p)
