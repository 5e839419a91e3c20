"""Feasibility and exact min-cost flow by successive shortest paths."""

from __future__ import annotations

import heapq
from collections.abc import Sequence
from dataclasses import dataclass

from flowforge.core.exceptions import InfeasibleError
from flowforge.core.logging import get_logger
from flowforge.oracle.network import DirectedFlowNetwork, Number, edmonds_karp, trace_path
from flowforge.schemas.flow import FlowProblem

logger = get_logger()


@dataclass(frozen=True)
class MinCostResult:
    """Optimal integral flow and its cost, or an infeasibility verdict."""

    feasible: bool
    flow: tuple[int, ...] | None = None
    cost: int | None = None


def _imbalance(p: FlowProblem, base: Sequence[Number]) -> list[Number]:
    """Demand still to be met once ``base`` is sent on every edge."""
    need: list[Number] = list(p.dem)
    for (u, v, _), x in zip(p.graph.edges, base):
        need[v] -= x
        need[u] += x
    return need


def feasible_flow(
    p: FlowProblem,
    lo: Sequence[Number] | None = None,
    hi: Sequence[Number] | None = None,
    tol: float = 0.0,
) -> list[Number] | None:
    """A flow within ``[lo, hi]`` meeting the demands, or ``None``.

    Lower bounds are sent up front; the remaining imbalance is routed from an
    auxiliary source to an auxiliary sink with Edmonds-Karp.

    Args:
        p: Instance
        lo: Lower bounds, defaults to ``p.u_lo``
        hi: Upper bounds, defaults to ``p.u_hi``
        tol: Saturation tolerance for real-valued bounds

    Returns:
        Per-edge flow, or ``None`` when infeasible
    """
    lower = list(p.u_lo) if lo is None else list(lo)
    upper = list(p.u_hi) if hi is None else list(hi)
    n = p.n
    S, T = n, n + 1
    net = DirectedFlowNetwork(n + 2)
    for e, (u, v, _) in enumerate(p.graph.edges):
        net.add_arc(u, v, upper[e] - lower[e])
    need = _imbalance(p, lower)
    required: Number = 0
    for v, b in enumerate(need):
        if b < 0:
            net.add_arc(S, v, -b)
        elif b > 0:
            net.add_arc(v, T, b)
            required += b
    value, flows = edmonds_karp(net, S, T, tol)
    if value < required - tol * max(1, p.m):
        return None
    return [lower[e] + flows[e] for e in range(p.m)]


def is_feasible(p: FlowProblem) -> bool:
    return feasible_flow(p) is not None


def ssp_min_cost(p: FlowProblem) -> MinCostResult:
    """Exact integral min-cost flow.

    Feasibility is settled first by :func:`feasible_flow`. Negative-cost edges
    are pre-saturated so every residual arc starts with nonnegative cost; the
    imbalance is then routed along shortest paths under vertex potentials.

    Returns:
        The optimum, or ``MinCostResult(feasible=False)``
    """
    if not is_feasible(p):
        logger.debug("Instance infeasible", n=p.n, m=p.m)
        return MinCostResult(False)

    n = p.n
    S, T = n, n + 1
    net = DirectedFlowNetwork(n + 2)
    base = list(p.u_lo)
    for e, (u, v, _) in enumerate(p.graph.edges):
        span = p.u_hi[e] - p.u_lo[e]
        net.add_arc(u, v, span, p.c[e])
        if p.c[e] < 0:
            net.push(2 * e, span)
            base[e] = p.u_hi[e]
    need = _imbalance(p, base)
    for v, b in enumerate(need):
        if b < 0:
            net.add_arc(S, v, -b, 0)
        elif b > 0:
            net.add_arc(v, T, b, 0)

    size = n + 2
    potential = [0] * size
    while True:
        dist: list[int | None] = [None] * size
        via = [-1] * size
        dist[S] = 0
        heap = [(0, S)]
        done = [False] * size
        while heap:
            d, x = heapq.heappop(heap)
            if done[x]:
                continue
            done[x] = True
            for arc in net.out[x]:
                if net.cap[arc] <= 0:
                    continue
                y = net.head[arc]
                nd = d + int(net.cost[arc]) + potential[x] - potential[y]
                cur = dist[y]
                if not done[y] and (cur is None or nd < cur):
                    dist[y] = nd
                    via[y] = arc
                    heapq.heappush(heap, (nd, y))
        reach = dist[T]
        if reach is None:
            break
        for v in range(size):
            dv = dist[v]
            potential[v] += reach if dv is None else min(dv, reach)
        path = trace_path(net, via, S, T)
        bottleneck = min(net.cap[arc] for arc in path)
        for arc in path:
            net.push(arc, bottleneck)

    flow = tuple(int(p.u_lo[e] + net.flow(e)) for e in range(p.m))
    if any(_imbalance(p, flow)):
        raise InfeasibleError("Successive shortest paths left demand unmet", "mcmf_oracle")
    cost = sum(c * f for c, f in zip(p.c, flow))
    return MinCostResult(True, flow, cost)


def optimal_cost(p: FlowProblem) -> int:
    """Optimal cost ``F*``.

    Raises:
        InfeasibleError: If the instance has no feasible flow
    """
    result = ssp_min_cost(p)
    if not result.feasible or result.cost is None:
        raise InfeasibleError("Instance has no feasible flow", "mcmf_oracle")
    return result.cost
