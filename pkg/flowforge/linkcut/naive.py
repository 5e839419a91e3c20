"""Adjacency-list forest with linear-time path operations, used as a reference."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from flowforge.linkcut.base import DynamicForest, EdgeHandle, EdgeValue, PathSums


@dataclass
class _EdgeState:
    g: float
    length: float
    flow: float = 0.0
    acc: float = 0.0


class NaiveForest(DynamicForest):
    """Reference forest: every path operation walks the tree explicitly."""

    def __init__(self, n: int, epsilon: float) -> None:
        super().__init__(n, epsilon)
        self._adj: list[dict[int, int]] = [{} for _ in range(n)]
        self._state: dict[int, _EdgeState] = {}

    def link(self, u: int, v: int, g: float, length: float) -> EdgeHandle:
        self._prepare_link(u, v, length)
        handle = self._register(u, v)
        self._adj[u][v] = handle.id
        self._adj[v][u] = handle.id
        self._state[handle.id] = _EdgeState(float(g), float(length))
        return handle

    def cut(self, e: EdgeHandle) -> None:
        self._require(e)
        del self._adj[e.tail][e.head]
        del self._adj[e.head][e.tail]
        del self._state[e.id]
        self._unregister(e)

    def update_edge_value(self, e: EdgeHandle, which: EdgeValue, value: float) -> None:
        self._require(e)
        self._check_value(which, value)
        if which == "gradient":
            self._state[e.id].g = float(value)
        else:
            self._state[e.id].length = float(value)

    def _path(self, u: int, v: int) -> list[tuple[EdgeHandle, int]]:
        """Edges of the ``u``-``v`` path with their traversal sign."""
        self._check_vertex(u)
        self._check_vertex(v)
        back: dict[int, int] = {u: -1}
        queue = deque([u])
        while queue and v not in back:
            x = queue.popleft()
            for y in self._adj[x]:
                if y not in back:
                    back[y] = x
                    queue.append(y)
        if v not in back:
            self._require_same_tree(u, v)
        out: list[tuple[EdgeHandle, int]] = []
        x = v
        while x != u:
            p = back[x]
            handle = self._handles[self._adj[p][x]]
            out.append((handle, 1 if handle.tail == p else -1))
            x = p
        out.reverse()
        return out

    def path_sums(self, u: int, v: int) -> PathSums:
        gsum = 0.0
        labs = 0.0
        for handle, sign in self._path(u, v):
            st = self._state[handle.id]
            gsum += sign * st.g
            labs += st.length
        return PathSums(gsum, labs)

    def add_signed_flow(self, u: int, v: int, eta: float) -> None:
        for handle, sign in self._path(u, v):
            self._state[handle.id].flow += sign * eta

    def add_abs_flow(self, u: int, v: int, eta: float) -> None:
        self._check_eta(eta)
        for handle, _ in self._path(u, v):
            st = self._state[handle.id]
            st.flow += eta
            st.acc += eta

    def get_flow(self, e: EdgeHandle) -> float:
        return self._state[self._require(e).id].flow

    def get_accumulator(self, e: EdgeHandle) -> float:
        return self._state[self._require(e).id].acc

    def detect(self) -> set[EdgeHandle]:
        found = set()
        for eid in sorted(self._state):
            st = self._state[eid]
            if st.length * st.acc >= self._epsilon:
                st.acc = 0.0
                found.add(self._handles[eid])
        return found

    def connected(self, u: int, v: int) -> bool:
        self._check_vertex(v)
        return u == v or v in self.component(u)

    def find_root(self, v: int) -> int:
        """Smallest vertex id of the component, a canonical representative."""
        return min(self.component(v))

    def component(self, v: int) -> set[int]:
        """Vertices of the tree containing ``v``."""
        self._check_vertex(v)
        seen = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in self._adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen
