"""Exhaustive min-cost flow for tiny instances."""

from __future__ import annotations

from collections import deque
from itertools import product

from flowforge.core.exceptions import InstanceTooLargeError
from flowforge.oracle.mincost import MinCostResult
from flowforge.schemas.flow import FlowProblem

MAX_VERTICES = 6
MAX_EDGES = 9
MAX_RANGE = 6


def brute_force_min_cost(p: FlowProblem) -> MinCostResult:
    """Enumerate every integral flow within bounds and keep the cheapest.

    Edges outside a spanning forest are enumerated; forest edges are then
    forced by conservation, leaves first.

    Raises:
        InstanceTooLargeError: Beyond 6 vertices, 9 edges or a bound range of 6
    """
    if p.n > MAX_VERTICES or p.m > MAX_EDGES:
        raise InstanceTooLargeError(
            f"Brute force supports n <= {MAX_VERTICES}, m <= {MAX_EDGES}; got n={p.n}, m={p.m}",
            "mcmf_oracle",
        )
    if any(hi - lo > MAX_RANGE for lo, hi in zip(p.u_lo, p.u_hi)):
        raise InstanceTooLargeError(f"Bound ranges must be at most {MAX_RANGE}", "mcmf_oracle")

    edges = p.graph.edges
    parent_edge = [-1] * p.n
    order: list[int] = []
    roots: list[int] = []
    seen = [False] * p.n
    for start in range(p.n):
        if seen[start]:
            continue
        seen[start] = True
        roots.append(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y, eid in p.graph.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    parent_edge[y] = eid
                    queue.append(y)
    forest = {e for e in parent_edge if e != -1}
    free = [e for e in range(p.m) if e not in forest]

    best: tuple[int, tuple[int, ...]] | None = None
    flow = [0] * p.m
    for values in product(*(range(p.u_lo[e], p.u_hi[e] + 1) for e in free)):
        for e, x in zip(free, values):
            flow[e] = x
        net = [0] * p.n
        for e in free:
            net[edges[e].v] += flow[e]
            net[edges[e].u] -= flow[e]
        ok = True
        for v in reversed(order):
            e = parent_edge[v]
            if e == -1:
                continue
            gap = p.dem[v] - net[v]
            x = gap if edges[e].v == v else -gap
            if not p.u_lo[e] <= x <= p.u_hi[e]:
                ok = False
                break
            flow[e] = x
            net[edges[e].v] += x
            net[edges[e].u] -= x
        if not ok or any(net[r] != p.dem[r] for r in roots):
            continue
        cost = sum(c * f for c, f in zip(p.c, flow))
        if best is None or cost < best[0]:
            best = (cost, tuple(flow))

    if best is None:
        return MinCostResult(False)
    return MinCostResult(True, best[1], best[0])
