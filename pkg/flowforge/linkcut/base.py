"""Dynamic forest interface shared by the link-cut forest and its naive mirror."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Literal, NamedTuple

from flowforge.core.exceptions import ForestError

EdgeValue = Literal["gradient", "length"]


class EdgeHandle(NamedTuple):
    """Forest edge; ``tail -> head`` is its implicit direction."""

    id: int
    tail: int
    head: int

    @property
    def ends(self) -> tuple[int, int]:
        return (self.tail, self.head)


class PathSums(NamedTuple):
    """Signed gradient sum and length sum along a tree path."""

    gsum: float
    labs: float


class DynamicForest(ABC):
    """Forest of gradient/length/flow-carrying edges under link and cut.

    Path operations run between two vertices of one tree. An edge contributes
    ``+1`` to a path traversed from ``u`` to ``v`` when the traversal follows
    ``tail -> head`` and ``-1`` otherwise.
    """

    def __init__(self, n: int, epsilon: float) -> None:
        if n < 1:
            raise ForestError(f"A forest needs at least one vertex, got {n}", "link_cut")
        if not epsilon > 0:
            raise ForestError(f"DETECT threshold must be positive, got {epsilon}", "link_cut")
        self.n = n
        self._epsilon = float(epsilon)
        self._handles: dict[int, EdgeHandle] = {}
        self._by_ends: dict[tuple[int, int], int] = {}
        self._next_id = 0

    @property
    def epsilon(self) -> float:
        return self._epsilon

    @abstractmethod
    def link(self, u: int, v: int, g: float, length: float) -> EdgeHandle:
        """Join two trees with a new edge ``u -> v``.

        Raises:
            ForestError: If ``u`` and ``v`` already share a tree or ``length <= 0``
        """
        ...

    @abstractmethod
    def cut(self, e: EdgeHandle) -> None:
        """Remove an edge.

        Raises:
            ForestError: If the edge is not present
        """
        ...

    @abstractmethod
    def update_edge_value(self, e: EdgeHandle, which: EdgeValue, value: float) -> None:
        """Replace the gradient or the length of an edge."""
        ...

    @abstractmethod
    def path_sums(self, u: int, v: int) -> PathSums:
        """Signed gradient sum and length sum of the ``u``-``v`` path."""
        ...

    @abstractmethod
    def add_signed_flow(self, u: int, v: int, eta: float) -> None:
        """Add ``eta`` times the path's signed indicator to the flow."""
        ...

    @abstractmethod
    def add_abs_flow(self, u: int, v: int, eta: float) -> None:
        """Add ``eta`` to the flow and to the DETECT accumulator of every path edge."""
        ...

    @abstractmethod
    def get_flow(self, e: EdgeHandle) -> float:
        ...

    @abstractmethod
    def get_accumulator(self, e: EdgeHandle) -> float:
        ...

    @abstractmethod
    def detect(self) -> set[EdgeHandle]:
        """Report and reset the edges whose ``length * accumulator`` reached epsilon."""
        ...

    @abstractmethod
    def find_root(self, v: int) -> int:
        ...

    def connected(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return u == v or self.find_root(u) == self.find_root(v)

    def edges(self) -> list[EdgeHandle]:
        """Present edges in id order."""
        return [self._handles[i] for i in sorted(self._handles)]

    def edge_count(self) -> int:
        return len(self._handles)

    def edge_between(self, u: int, v: int) -> EdgeHandle:
        """Look up the edge joining ``u`` and ``v`` in either orientation."""
        eid = self._by_ends.get((min(u, v), max(u, v)))
        if eid is None:
            raise ForestError(f"No edge between {u} and {v}", "link_cut")
        return self._handles[eid]

    def component_count(self) -> int:
        return len({self.find_root(v) for v in range(self.n)})

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ForestError(f"Vertex {v} out of range for n={self.n}", "link_cut")

    def _register(self, u: int, v: int) -> EdgeHandle:
        handle = EdgeHandle(self._next_id, u, v)
        self._next_id += 1
        self._handles[handle.id] = handle
        self._by_ends[(min(u, v), max(u, v))] = handle.id
        return handle

    def _require(self, e: EdgeHandle) -> EdgeHandle:
        if self._handles.get(e.id) != e:
            raise ForestError(f"Edge {e.tail}->{e.head} (id {e.id}) is not present", "link_cut")
        return e

    def _unregister(self, e: EdgeHandle) -> None:
        del self._handles[e.id]
        del self._by_ends[(min(e.tail, e.head), max(e.tail, e.head))]

    def _prepare_link(self, u: int, v: int, length: float) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if not length > 0:
            raise ForestError(f"Edge length must be positive, got {length}", "link_cut")
        if self.connected(u, v):
            raise ForestError(f"Vertices {u} and {v} are already in one tree", "link_cut")

    def _require_same_tree(self, u: int, v: int) -> None:
        if not self.connected(u, v):
            raise ForestError(f"Vertices {u} and {v} are in different trees", "link_cut")

    @staticmethod
    def _check_eta(eta: float) -> None:
        if eta < 0:
            raise ForestError(f"Absolute flow increment must be nonnegative, got {eta}", "link_cut")

    @staticmethod
    def _check_value(which: EdgeValue, value: float) -> None:
        if which not in ("gradient", "length"):
            raise ForestError(f"Unknown edge value {which!r}", "link_cut")
        if which == "length" and not value > 0:
            raise ForestError(f"Edge length must be positive, got {value}", "link_cut")
