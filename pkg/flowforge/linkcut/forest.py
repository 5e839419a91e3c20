"""Link-cut forest with path aggregates, lazy flow updates and DETECT."""

from __future__ import annotations

import math

from flowforge.core.config import settings
from flowforge.core.logging import get_logger
from flowforge.linkcut.base import DynamicForest, EdgeHandle, EdgeValue, PathSums

logger = get_logger()

INF = math.inf
NIL = -1
# Candidate filter for DETECT; the exact test decides.
_SLACK_RELAX = 1.0 - 1e-9


class DynTreeForest(DynamicForest):
    """Sleator-Tarjan link-cut forest in which every edge is its own splay node.

    Slots ``0..n-1`` are vertices, later slots are edges. An edge node stores
    ``dir``, the sign of its ``tail -> head`` orientation relative to the
    in-order of its splay tree; reversing a subtree flips it. Aggregates are
    the signed gradient sum, the length sum and the minimum DETECT slack
    ``(epsilon / length) - accumulator`` over unflagged edges. Edges found to
    satisfy ``length * accumulator >= epsilon`` are flagged so that
    :meth:`detect` only visits reported edges.
    """

    def __init__(self, n: int, epsilon: float | None = None) -> None:
        super().__init__(n, settings.LINKCUT_EPSILON if epsilon is None else epsilon)
        self._left: list[int] = [NIL] * n
        self._right: list[int] = [NIL] * n
        self._parent: list[int] = [NIL] * n
        self._rev: list[bool] = [False] * n
        self._tag_signed: list[float] = [0.0] * n
        self._tag_abs: list[float] = [0.0] * n
        self._is_edge: list[bool] = [False] * n
        self._g: list[float] = [0.0] * n
        self._len: list[float] = [0.0] * n
        self._flow: list[float] = [0.0] * n
        self._acc: list[float] = [0.0] * n
        self._dir: list[int] = [0] * n
        self._slack: list[float] = [INF] * n
        self._gsum: list[float] = [0.0] * n
        self._lsum: list[float] = [0.0] * n
        self._min_slack: list[float] = [INF] * n
        self._flagged: set[int] = set()
        self._slot_of: dict[int, int] = {}
        self._edge_at: dict[int, int] = {}
        self._free: list[int] = []

    # Splay-tree primitives

    def _is_root(self, x: int) -> bool:
        p = self._parent[x]
        return p == NIL or (self._left[p] != x and self._right[p] != x)

    def _pull(self, x: int) -> None:
        if self._is_edge[x]:
            gs = self._dir[x] * self._g[x]
            ls = self._len[x]
            ms = INF if x in self._flagged else self._slack[x]
        else:
            gs, ls, ms = 0.0, 0.0, INF
        for c in (self._left[x], self._right[x]):
            if c != NIL:
                gs += self._gsum[c]
                ls += self._lsum[c]
                if self._min_slack[c] < ms:
                    ms = self._min_slack[c]
        self._gsum[x] = gs
        self._lsum[x] = ls
        self._min_slack[x] = ms

    def _apply_rev(self, x: int) -> None:
        self._left[x], self._right[x] = self._right[x], self._left[x]
        self._dir[x] = -self._dir[x]
        self._gsum[x] = -self._gsum[x]
        self._tag_signed[x] = -self._tag_signed[x]
        self._rev[x] = not self._rev[x]

    def _apply_signed(self, x: int, eta: float) -> None:
        if self._is_edge[x]:
            self._flow[x] += eta * self._dir[x]
        self._tag_signed[x] += eta

    def _apply_abs(self, x: int, eta: float) -> None:
        if self._is_edge[x]:
            self._flow[x] += eta
            self._acc[x] += eta
            self._slack[x] -= eta
        self._min_slack[x] -= eta
        self._tag_abs[x] += eta

    def _push(self, x: int) -> None:
        left, right = self._left[x], self._right[x]
        if self._rev[x]:
            for c in (left, right):
                if c != NIL:
                    self._apply_rev(c)
            self._rev[x] = False
        if self._tag_signed[x]:
            eta = self._tag_signed[x]
            for c in (left, right):
                if c != NIL:
                    self._apply_signed(c, eta)
            self._tag_signed[x] = 0.0
        if self._tag_abs[x]:
            eta = self._tag_abs[x]
            for c in (left, right):
                if c != NIL:
                    self._apply_abs(c, eta)
            self._tag_abs[x] = 0.0

    def _rotate(self, x: int) -> None:
        p = self._parent[x]
        g = self._parent[p]
        if not self._is_root(p):
            if self._left[g] == p:
                self._left[g] = x
            else:
                self._right[g] = x
        self._parent[x] = g
        if self._left[p] == x:
            b = self._right[x]
            self._left[p] = b
            self._right[x] = p
        else:
            b = self._left[x]
            self._right[p] = b
            self._left[x] = p
        if b != NIL:
            self._parent[b] = p
        self._parent[p] = x
        self._pull(p)
        self._pull(x)

    def _splay(self, x: int) -> None:
        chain = [x]
        y = x
        while not self._is_root(y):
            y = self._parent[y]
            chain.append(y)
        for y in reversed(chain):
            self._push(y)
        while not self._is_root(x):
            p = self._parent[x]
            if not self._is_root(p):
                g = self._parent[p]
                zigzig = (self._left[g] == p) == (self._left[p] == x)
                self._rotate(p if zigzig else x)
            self._rotate(x)

    def _access(self, x: int) -> None:
        last = NIL
        y = x
        while y != NIL:
            self._splay(y)
            self._right[y] = last
            self._pull(y)
            last = y
            y = self._parent[y]
        self._splay(x)

    def _make_root(self, x: int) -> None:
        self._access(x)
        self._apply_rev(x)

    def _detach_left(self, x: int) -> None:
        c = self._left[x]
        if c != NIL:
            self._parent[c] = NIL
            self._left[x] = NIL
            self._pull(x)

    def _expose(self, u: int, v: int) -> int:
        """Make the ``u``-``v`` path one splay tree rooted at ``v``."""
        self._make_root(u)
        self._access(v)
        return v

    # Slot management

    def _alloc(self) -> int:
        if self._free:
            return self._free.pop()
        self._left.append(NIL)
        self._right.append(NIL)
        self._parent.append(NIL)
        self._rev.append(False)
        self._tag_signed.append(0.0)
        self._tag_abs.append(0.0)
        self._is_edge.append(False)
        self._g.append(0.0)
        self._len.append(0.0)
        self._flow.append(0.0)
        self._acc.append(0.0)
        self._dir.append(0)
        self._slack.append(INF)
        self._gsum.append(0.0)
        self._lsum.append(0.0)
        self._min_slack.append(INF)
        return len(self._left) - 1

    def _threshold(self, x: int) -> float:
        return _SLACK_RELAX * self._epsilon / self._len[x]

    def _exact_hit(self, x: int) -> bool:
        return self._len[x] * self._acc[x] >= self._epsilon

    def _slot(self, e: EdgeHandle) -> int:
        return self._slot_of[self._require(e).id]

    # Public operations

    def find_root(self, v: int) -> int:
        self._check_vertex(v)
        self._access(v)
        x = v
        while True:
            self._push(x)
            if self._left[x] == NIL:
                break
            x = self._left[x]
        self._splay(x)
        return x

    def link(self, u: int, v: int, g: float, length: float) -> EdgeHandle:
        self._prepare_link(u, v, length)
        handle = self._register(u, v)
        e = self._alloc()
        self._slot_of[handle.id] = e
        self._edge_at[e] = handle.id
        self._left[e] = self._right[e] = self._parent[e] = NIL
        self._rev[e] = False
        self._tag_signed[e] = self._tag_abs[e] = 0.0
        self._is_edge[e] = True
        self._g[e] = float(g)
        self._len[e] = float(length)
        self._flow[e] = 0.0
        self._acc[e] = 0.0
        # Stored top-down as head, edge, tail: the in-order runs against tail -> head.
        self._dir[e] = -1
        self._slack[e] = self._threshold(e)
        self._pull(e)
        self._make_root(u)
        self._parent[u] = e
        self._parent[e] = v
        return handle

    def cut(self, e: EdgeHandle) -> None:
        x = self._slot(e)
        for end in (e.tail, e.head):
            self._make_root(x)
            self._access(end)
            self._detach_left(end)
        self._is_edge[x] = False
        self._parent[x] = self._left[x] = self._right[x] = NIL
        self._flagged.discard(x)
        self._free.append(x)
        del self._slot_of[e.id]
        del self._edge_at[x]
        self._unregister(e)

    def update_edge_value(self, e: EdgeHandle, which: EdgeValue, value: float) -> None:
        x = self._slot(e)
        self._check_value(which, value)
        self._splay(x)
        if which == "gradient":
            self._g[x] = float(value)
        else:
            self._len[x] = float(value)
            self._slack[x] = self._threshold(x) - self._acc[x]
            if self._exact_hit(x):
                self._flagged.add(x)
            else:
                self._flagged.discard(x)
        self._pull(x)

    def path_sums(self, u: int, v: int) -> PathSums:
        self._require_same_tree(u, v)
        if u == v:
            return PathSums(0.0, 0.0)
        r = self._expose(u, v)
        return PathSums(self._gsum[r], self._lsum[r])

    def add_signed_flow(self, u: int, v: int, eta: float) -> None:
        self._require_same_tree(u, v)
        if u != v:
            self._apply_signed(self._expose(u, v), float(eta))

    def add_abs_flow(self, u: int, v: int, eta: float) -> None:
        self._check_eta(eta)
        self._require_same_tree(u, v)
        if u == v:
            return
        r = self._expose(u, v)
        self._apply_abs(r, float(eta))
        if self._min_slack[r] <= 0.0:
            self._flag_candidates(r)

    def _flag_candidates(self, root: int) -> None:
        visited = []
        stack = [root]
        while stack:
            x = stack.pop()
            if self._min_slack[x] > 0.0:
                continue
            self._push(x)
            visited.append(x)
            if (
                self._is_edge[x]
                and x not in self._flagged
                and self._slack[x] <= 0.0
                and self._exact_hit(x)
            ):
                self._flagged.add(x)
            for c in (self._left[x], self._right[x]):
                if c != NIL:
                    stack.append(c)
        for x in reversed(visited):
            self._pull(x)

    def get_flow(self, e: EdgeHandle) -> float:
        x = self._slot(e)
        self._splay(x)
        return self._flow[x]

    def get_accumulator(self, e: EdgeHandle) -> float:
        x = self._slot(e)
        self._splay(x)
        return self._acc[x]

    def detect(self, full_scan: bool = False) -> set[EdgeHandle]:
        """Report and reset edges with ``length * accumulator >= epsilon``.

        Args:
            full_scan: Test every edge instead of only the flagged ones

        Returns:
            The reported edges
        """
        candidates = sorted(self._edge_at) if full_scan else sorted(self._flagged)
        found: set[EdgeHandle] = set()
        for x in candidates:
            self._splay(x)
            if self._exact_hit(x):
                self._acc[x] = 0.0
                found.add(self._handles[self._edge_at[x]])
            self._slack[x] = self._threshold(x) - self._acc[x]
            self._flagged.discard(x)
            self._pull(x)
        if found:
            logger.debug("DETECT reported edges", count=len(found))
        return found
