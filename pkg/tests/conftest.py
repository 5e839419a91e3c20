"""Pytest configuration and fixtures."""

from __future__ import annotations

import pytest

from flowforge.graphs.types import WeightedGraph
from flowforge.schemas.flow import FlowProblem


@pytest.fixture
def triangle() -> WeightedGraph:
    """Unit-weight triangle K3 with edges (0,1), (1,2), (0,2)."""
    return WeightedGraph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])


@pytest.fixture
def k5() -> WeightedGraph:
    """Unit-weight complete graph on five vertices."""
    return WeightedGraph(5, [(u, v, 1.0) for u in range(5) for v in range(u + 1, 5)])


@pytest.fixture
def cycle4() -> WeightedGraph:
    """Unit-weight cycle 0-1-2-3-0."""
    return WeightedGraph(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)])


@pytest.fixture
def path4() -> WeightedGraph:
    """Unit-weight path on five vertices."""
    return WeightedGraph(5, [(i, i + 1, 1.0) for i in range(4)])


@pytest.fixture
def triangle_flow() -> FlowProblem:
    """Route 2 units from 0 to 2 over a cheap two-hop path or an expensive direct arc.

    Each arc carries ``[0, 3]``; the optimum sends everything along 0->1->2 for
    cost 4.
    """
    return FlowProblem.build(
        3,
        [(0, 1), (1, 2), (0, 2)],
        c=[1, 1, 5],
        u_lo=[0, 0, 0],
        u_hi=[3, 3, 3],
        dem=[-2, 0, 2],
    )
