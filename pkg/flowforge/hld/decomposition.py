"""Heavy-light decomposition and ancestor-chain intersection statistics."""

from __future__ import annotations

from dataclasses import dataclass

from flowforge.core.exceptions import InvalidInputError
from flowforge.graphs.types import RootedTreeArray


@dataclass(frozen=True)
class HeavyChains:
    """Vertex-disjoint chains; ``chains[chain_of[v]]`` contains ``v``."""

    chains: tuple[tuple[int, ...], ...]
    chain_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.chains)


@dataclass(frozen=True)
class ConditionReport:
    """Violation counts of the decomposition conditions."""

    unassigned: int
    shared_children: int
    deep_paths: int

    @property
    def ok(self) -> bool:
        return self.unassigned == 0 and self.shared_children == 0 and self.deep_paths == 0


def subtree_sizes(T: RootedTreeArray) -> list[int]:
    """Subtree size of every vertex; children always carry larger ids."""
    size = [1] * T.n
    for v in range(T.n - 1, 0, -1):
        size[T.parent[v]] += size[v]
    return size


def heavy_children(T: RootedTreeArray, sizes: list[int] | None = None) -> list[int]:
    """Heavy child per vertex (-1 for leaves); ties go to the smaller id."""
    size = subtree_sizes(T) if sizes is None else sizes
    return [max(kids, key=lambda c: (size[c], -c)) if kids else -1 for kids in T.children]


def heavy_light_decomposition(T: RootedTreeArray) -> HeavyChains:
    """Split ``T`` into heavy chains; the root starts chain 0."""
    heavy = heavy_children(T)
    chain_of = [-1] * T.n
    chains: list[tuple[int, ...]] = []
    heads = [0]
    while heads:
        head = heads.pop()
        chain = []
        v = head
        while v != -1:
            chain.append(v)
            chain_of[v] = len(chains)
            light = [c for c in T.children[v] if c != heavy[v]]
            heads.extend(reversed(light))
            v = heavy[v]
        chains.append(tuple(chain))
    return HeavyChains(tuple(chains), tuple(chain_of))


def _check(T: RootedTreeArray, C: HeavyChains) -> None:
    if len(C.chain_of) != T.n:
        raise InvalidInputError(
            f"Chains cover {len(C.chain_of)} vertices, tree has {T.n}", "hld"
        )


def chain_intersection_stats(T: RootedTreeArray, C: HeavyChains) -> tuple[float, list[int]]:
    """Count the distinct chains met by each vertex and its ancestors.

    Chains are contiguous along root paths, so the count of ``v`` is its
    parent's count plus one when the parent edge is light.

    Returns:
        The average count over all vertices and the per-vertex counts
    """
    _check(T, C)
    count = [1] * T.n
    for v in range(1, T.n):
        p = T.parent[v]
        count[v] = count[p] + (C.chain_of[v] != C.chain_of[p])
    return sum(count) / T.n, count


def chain_intersections_naive(T: RootedTreeArray, C: HeavyChains) -> list[int]:
    """Per-vertex chain counts by walking every ancestor with a seen-set."""
    _check(T, C)
    counts = []
    for u in range(T.n):
        seen = set()
        v = u
        while v != -1:
            seen.add(C.chain_of[v])
            v = T.parent[v]
        counts.append(len(seen))
    return counts


def validate_conditions(T: RootedTreeArray, C: HeavyChains) -> ConditionReport:
    """Check chain coverage, one child per chain, and the logarithmic path bound.

    The path bound requires at most ``floor(log2 n) + 1`` chains on every
    root-to-leaf path.
    """
    _check(T, C)
    unassigned = sum(1 for c in C.chain_of if not 0 <= c < len(C.chains))
    position = {}
    for idx, chain in enumerate(C.chains):
        for v in chain:
            if v in position:
                unassigned += 1
            position[v] = idx
    shared = sum(
        1
        for u in range(T.n)
        if sum(1 for c in T.children[u] if C.chain_of[c] == C.chain_of[u]) > 1
    )
    bound = T.n.bit_length()
    _, counts = chain_intersection_stats(T, C)
    deep = sum(1 for v in range(T.n) if not T.children[v] and counts[v] > bound)
    return ConditionReport(unassigned, shared, deep)
