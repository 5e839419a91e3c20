"""Deterministic random graph and tree generators."""

from __future__ import annotations

from typing import Literal

import numpy as np

from flowforge.core.config import settings
from flowforge.core.exceptions import GenerationError, InvalidInputError
from flowforge.core.logging import get_logger
from flowforge.core.random import make_rng, trial_seed
from flowforge.graphs.types import RootedTreeArray, WeightedGraph

logger = get_logger()

WeightMode = Literal["unit", "uniform"]


def _sample_er(n: int, p: float, rng: np.random.Generator, weights: WeightMode) -> WeightedGraph:
    us, vs = np.triu_indices(n, k=1)
    mask = rng.random(us.shape[0]) < p
    us, vs = us[mask], vs[mask]
    if weights == "uniform":
        ws = rng.uniform(1.0, 10.0, size=us.shape[0])
    else:
        ws = np.ones(us.shape[0])
    return WeightedGraph(n, zip(us.tolist(), vs.tolist(), ws.tolist()))


def erdos_renyi_with_attempts(
    n: int,
    p: float,
    seed: int,
    weights: WeightMode = "unit",
    max_resamples: int | None = None,
) -> tuple[WeightedGraph, int]:
    """Sample a connected Erdos-Renyi graph and report how many resamples it took.

    Attempt ``i`` draws from the sub-seed ``trial_seed(seed, i)``; pairs are
    visited in lexicographic order so edge ids follow ``(u, v)`` with ``u < v``.

    Args:
        n: Vertex count, at least 1
        p: Edge probability in ``(0, 1]``
        seed: 64-bit seed
        weights: ``"unit"`` for weight 1, ``"uniform"`` for Uniform(1, 10)
        max_resamples: Attempt limit, defaults to ``ER_MAX_RESAMPLES``

    Returns:
        The connected graph and the number of rejected samples

    Raises:
        InvalidInputError: If ``n`` or ``p`` is out of range
        GenerationError: If no connected sample is found within the limit
    """
    if n < 1:
        raise InvalidInputError(f"n must be at least 1, got {n}", "graph_core")
    if not 0.0 < p <= 1.0:
        raise InvalidInputError(f"p must lie in (0, 1], got {p}", "graph_core")
    limit = settings.ER_MAX_RESAMPLES if max_resamples is None else max_resamples

    for attempt in range(limit):
        G = _sample_er(n, p, make_rng(trial_seed(seed, attempt)), weights)
        if G.is_connected():
            if attempt:
                logger.debug("ER graph resampled", n=n, p=p, resamples=attempt)
            return G, attempt

    raise GenerationError(
        f"No connected G({n}, {p}) sample after {limit} attempts; density too low",
        "graph_core",
    )


def erdos_renyi(
    n: int, p: float, seed: int, weights: WeightMode = "unit", max_resamples: int | None = None
) -> WeightedGraph:
    """Sample a connected Erdos-Renyi graph. See :func:`erdos_renyi_with_attempts`."""
    return erdos_renyi_with_attempts(n, p, seed, weights, max_resamples)[0]


def random_rooted_tree(n: int, seed: int) -> RootedTreeArray:
    """Random recursive tree: the parent of vertex ``k`` is uniform over ``0..k-1``."""
    if n < 1:
        raise InvalidInputError(f"n must be at least 1, got {n}", "graph_core")
    if n == 1:
        return RootedTreeArray([[]])
    parents = make_rng(seed).integers(0, np.arange(1, n))
    return RootedTreeArray.from_parents(parents.tolist())
