"""Residual flow networks and Edmonds-Karp maximum flow."""

from __future__ import annotations

from collections import deque
from itertools import combinations

from flowforge.core.exceptions import InvalidInputError

Number = int | float


class DirectedFlowNetwork:
    """Directed network stored as paired residual arcs.

    Arc ``2i`` is the ``i``-th added arc and ``2i + 1`` its reverse, so the
    partner of residual arc ``a`` is ``a ^ 1``.
    """

    def __init__(self, n: int) -> None:
        if n < 1:
            raise InvalidInputError(f"A network needs at least one vertex, got {n}", "mcmf_oracle")
        self.n = n
        self.head: list[int] = []
        self.cap: list[Number] = []
        self.cost: list[Number] = []
        self.out: list[list[int]] = [[] for _ in range(n)]
        self.original: list[Number] = []

    def add_arc(self, tail: int, head: int, capacity: Number, cost: Number = 0) -> int:
        """Add an arc and return its index among the added arcs."""
        if not (0 <= tail < self.n and 0 <= head < self.n):
            raise InvalidInputError(f"Arc ({tail}, {head}) out of range", "mcmf_oracle")
        if capacity < 0:
            raise InvalidInputError(f"Capacity must be nonnegative, got {capacity}", "mcmf_oracle")
        idx = len(self.original)
        self.out[tail].append(len(self.head))
        self.head.append(head)
        self.cap.append(capacity)
        self.cost.append(cost)
        self.out[head].append(len(self.head))
        self.head.append(tail)
        self.cap.append(0 * capacity)
        self.cost.append(-cost)
        self.original.append(capacity)
        return idx

    @property
    def arc_count(self) -> int:
        return len(self.original)

    def tail_of(self, arc: int) -> int:
        return self.head[arc ^ 1]

    def flow(self, idx: int) -> Number:
        """Current flow on an added arc."""
        return self.cap[2 * idx + 1]

    def push(self, arc: int, amount: Number) -> None:
        self.cap[arc] -= amount
        self.cap[arc ^ 1] += amount


def trace_path(net: DirectedFlowNetwork, via: list[int], s: int, t: int) -> list[int]:
    """Residual arcs of the search-tree path from ``s`` to ``t``."""
    path = []
    y = t
    while y != s:
        path.append(via[y])
        y = net.tail_of(via[y])
    path.reverse()
    return path


def edmonds_karp(
    net: DirectedFlowNetwork, s: int, t: int, tol: float = 0.0
) -> tuple[Number, list[Number]]:
    """Maximum ``s``-``t`` flow by shortest augmenting paths.

    Args:
        net: Network, augmented in place
        s: Source
        t: Sink
        tol: Residual capacities at or below this are treated as saturated

    Returns:
        The flow value and the flow on every added arc

    Raises:
        InvalidInputError: If ``s == t``
    """
    if s == t:
        raise InvalidInputError("Source and sink must differ", "mcmf_oracle")
    value: Number = 0
    while True:
        via = [-1] * net.n
        via[s] = -2
        queue = deque([s])
        while queue and via[t] == -1:
            x = queue.popleft()
            for arc in net.out[x]:
                y = net.head[arc]
                if via[y] == -1 and net.cap[arc] > tol:
                    via[y] = arc
                    queue.append(y)
        if via[t] == -1:
            break
        path = trace_path(net, via, s, t)
        bottleneck = min(net.cap[arc] for arc in path)
        for arc in path:
            net.push(arc, bottleneck)
        value += bottleneck
    return value, [net.flow(i) for i in range(net.arc_count)]


def min_cut_by_enumeration(net: DirectedFlowNetwork, s: int, t: int) -> Number:
    """Minimum ``s``-``t`` cut capacity over all vertex bipartitions."""
    if s == t:
        raise InvalidInputError("Source and sink must differ", "mcmf_oracle")
    others = [v for v in range(net.n) if v not in (s, t)]
    best: Number | None = None
    for size in range(len(others) + 1):
        for chosen in combinations(others, size):
            side = {s, *chosen}
            capacity: Number = 0
            for idx in range(net.arc_count):
                tail, head = net.head[2 * idx + 1], net.head[2 * idx]
                if tail in side and head not in side:
                    capacity += net.original[idx]
            best = capacity if best is None else min(best, capacity)
    assert best is not None
    return best
