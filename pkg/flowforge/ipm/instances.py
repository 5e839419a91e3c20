"""Random min-cost flow instances with a known strictly interior flow."""

from __future__ import annotations

import numpy as np

from flowforge.core.exceptions import InvalidInputError
from flowforge.core.logging import get_logger
from flowforge.core.random import make_rng
from flowforge.schemas.flow import FlowProblem, InteriorFlow

logger = get_logger()


def generate_interior_instance(
    n: int,
    extra_edges: int,
    U: int,
    C: int,
    seed: int,
    signed_costs: bool = False,
) -> tuple[FlowProblem, InteriorFlow]:
    """Random connected instance whose demands are met by an interior flow.

    A random spanning tree on a shuffled vertex order is joined by
    ``extra_edges`` further edges between distinct vertex pairs, each
    oriented at random. Every edge draws a slack in ``[2, U // 2]`` and a
    center so that ``[center - slack, center + slack]`` fits in ``[-U, U]``;
    the centers form the interior flow and fix the demands.

    Args:
        n: Vertex count, at least 2
        extra_edges: Non-tree edges to add
        U: Capacity magnitude bound, at least 2
        C: Cost magnitude bound, at least 1
        seed: Generator seed
        signed_costs: Draw costs from ``[-C, C]`` instead of ``[1, C]``

    Returns:
        The instance and its interior flow

    Raises:
        InvalidInputError: If a parameter is out of range
    """
    if n < 2:
        raise InvalidInputError(f"Instance needs n >= 2, got {n}", "ipm")
    if U < 2 or C < 1 or extra_edges < 0:
        raise InvalidInputError(
            f"Need U >= 2, C >= 1, extra_edges >= 0; got U={U}, C={C}, "
            f"extra_edges={extra_edges}",
            "ipm",
        )
    rng = make_rng(seed)
    perm = rng.permutation(n).tolist()
    pairs: list[tuple[int, int]] = []
    for k in range(1, n):
        parent = int(rng.integers(0, k))
        pairs.append((perm[parent], perm[k]))
    for _ in range(extra_edges):
        u, v = rng.choice(n, size=2, replace=False).tolist()
        pairs.append((u, v))
    arcs = [(v, u) if rng.random() < 0.5 else (u, v) for u, v in pairs]

    m = len(arcs)
    slack = rng.integers(2, max(2, U // 2) + 1, size=m)
    center = np.array([rng.integers(-(U - s), U - s + 1) for s in slack.tolist()])
    if signed_costs:
        costs = rng.integers(-C, C + 1, size=m)
    else:
        costs = rng.integers(1, C + 1, size=m)

    dem = np.zeros(n, dtype=np.int64)
    for (u, v), x in zip(arcs, center.tolist()):
        dem[v] += x
        dem[u] -= x
    p = FlowProblem.build(
        n,
        arcs,
        costs.tolist(),
        (center - slack).tolist(),
        (center + slack).tolist(),
        dem.tolist(),
        U=U,
        C=C,
    )
    logger.debug("Generated interior instance", n=n, m=m, U=U, C=C, seed=seed)
    return p, InteriorFlow.of(p, center.astype(float))
