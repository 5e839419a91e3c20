"""Fundamental-cycle potential reduction for min-cost flow."""

from __future__ import annotations

import math
from collections import deque
from typing import Literal, NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from flowforge.core.config import settings
from flowforge.core.exceptions import (
    BarrierDomainError,
    GraphError,
    InfeasibleError,
    InvalidInputError,
    StallError,
)
from flowforge.core.logging import get_logger
from flowforge.graphs.types import SpanningTree
from flowforge.ipm.potential import (
    FlowLike,
    alpha,
    default_kappa,
    gradient,
    lengths,
    potential,
    potential_or_inf,
)
from flowforge.linkcut.forest import DynTreeForest
from flowforge.lsst.hierarchy import lsst
from flowforge.oracle.mincost import feasible_flow, is_feasible, optimal_cost
from flowforge.schemas.flow import FlowProblem, InteriorFlow, is_strictly_interior
from flowforge.schemas.ipm import IpmReport, Termination

logger = get_logger()

StepRule = Literal["theorem", "line-search"]

# Line search runs over tau with eta = eta_max * (1 - exp(-tau)).
_TAU_MAX = 30.0


class CycleChoice(NamedTuple):
    """A signed fundamental cycle and its quality ``<g, D> / <l, |D|>``."""

    delta: np.ndarray
    ratio: float
    edge: int


class StepResult(NamedTuple):
    flow: InteriorFlow
    eta: float
    potential: float
    halvings: int


class _RootedTree:
    """Parent pointers of a spanning tree, for explicit path extraction."""

    def __init__(self, p: FlowProblem, T: SpanningTree) -> None:
        G = p.graph
        allowed = set(T.edge_ids)
        self.parent = [-1] * G.n
        self.parent_edge = [-1] * G.n
        self.depth = [0] * G.n
        seen = [False] * G.n
        seen[0] = True
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y, eid in G.adjacency[x]:
                if eid in allowed and not seen[y]:
                    seen[y] = True
                    self.parent[y] = x
                    self.parent_edge[y] = eid
                    self.depth[y] = self.depth[x] + 1
                    queue.append(y)
        self.edges = G.edges

    def signed_path(self, a: int, b: int) -> list[tuple[int, int]]:
        """``(edge, sign)`` pairs of the tree path traversed from ``a`` to ``b``."""
        up: list[tuple[int, int]] = []
        down: list[tuple[int, int]] = []
        while a != b:
            if self.depth[a] >= self.depth[b]:
                e = self.parent_edge[a]
                up.append((e, 1 if self.edges[e].u == a else -1))
                a = self.parent[a]
            else:
                e = self.parent_edge[b]
                down.append((e, 1 if self.edges[e].v == b else -1))
                b = self.parent[b]
        return up + down[::-1]


def fundamental_cycles(
    p: FlowProblem, T: SpanningTree, f: FlowLike, F_star: float, a: float | None = None
) -> list[CycleChoice]:
    """Every off-tree edge's fundamental cycle, oriented downhill, best ratio first.

    Path sums along the tree come from a link-cut forest carrying the edge
    gradients and lengths. Ties in ratio go to the smaller edge id.

    Raises:
        GraphError: If every edge is a tree edge
    """
    g = gradient(p, f, F_star, a)
    ell = lengths(p, f, a)
    tree = set(T.edge_ids)
    off = [e for e in range(p.m) if e not in tree]
    if not off:
        raise GraphError("The graph is a tree; its circulation space is trivial", "ipm")

    forest = DynTreeForest(p.n, epsilon=1.0)
    for eid in T.edge_ids:
        e = p.graph.edges[eid]
        forest.link(e.u, e.v, float(g[eid]), float(ell[eid]))

    scored = []
    for eid in off:
        e = p.graph.edges[eid]
        sums = forest.path_sums(e.v, e.u)
        gsum = float(g[eid]) + sums.gsum
        labs = float(ell[eid]) + sums.labs
        sign = -1 if gsum > 0 else 1
        scored.append((-abs(gsum) / labs, eid, sign))
    scored.sort()

    rooted = _RootedTree(p, T)
    out = []
    for ratio, eid, sign in scored:
        delta = np.zeros(p.m, dtype=np.int64)
        delta[eid] = sign
        e = p.graph.edges[eid]
        for tid, s in rooted.signed_path(e.v, e.u):
            delta[tid] = sign * s
        out.append(CycleChoice(delta, ratio, eid))
    return out


def best_fundamental_cycle(
    p: FlowProblem, T: SpanningTree, f: FlowLike, F_star: float, a: float | None = None
) -> CycleChoice:
    """Fundamental cycle of ``T`` with the most negative ratio."""
    return fundamental_cycles(p, T, f, F_star, a)[0]


def _flow(f: FlowLike) -> np.ndarray:
    return f.f if isinstance(f, InteriorFlow) else np.asarray(f, dtype=float)


def theorem_step(
    p: FlowProblem,
    f: FlowLike,
    delta: np.ndarray,
    kappa: float,
    F_star: float,
    a: float | None = None,
    max_halvings: int | None = None,
) -> StepResult:
    """Step ``eta = kappa^2 / (50 |<g, D>|)`` along ``D``, halved until it improves.

    Raises:
        InvalidInputError: If ``<g, D> == 0``
        StallError: If no halving yields a strictly better interior point
    """
    a = alpha(p.m, p.U) if a is None else a
    halvings = settings.IPM_MAX_HALVINGS if max_halvings is None else max_halvings
    x = _flow(f)
    d = np.asarray(delta, dtype=float)
    gd = float(np.dot(gradient(p, x, F_star, a), d))
    if gd == 0.0:
        raise InvalidInputError("Direction is orthogonal to the gradient", "ipm")
    phi = potential(p, x, F_star, a)
    eta = kappa**2 / (50.0 * abs(gd))
    for attempt in range(halvings + 1):
        candidate = x + eta * d
        if is_strictly_interior(p, candidate):
            value = potential_or_inf(p, candidate, F_star, a)
            if value < phi:
                return StepResult(InteriorFlow(candidate), eta, value, attempt)
        eta /= 2.0
    raise StallError(f"No improving step after {halvings} halvings", "ipm")


def step(
    p: FlowProblem,
    f: FlowLike,
    delta: np.ndarray,
    kappa: float,
    F_star: float,
    a: float | None = None,
) -> InteriorFlow:
    """Theorem step; see :func:`theorem_step`."""
    return theorem_step(p, f, delta, kappa, F_star, a).flow


def max_step(p: FlowProblem, f: FlowLike, delta: np.ndarray) -> float:
    """Largest ``eta`` keeping ``f + eta * D`` inside the closed bounds."""
    x = _flow(f)
    d = np.asarray(delta, dtype=float)
    room = np.full(p.m, math.inf)
    pos, neg = d > 0, d < 0
    room[pos] = (p.upper()[pos] - x[pos]) / d[pos]
    room[neg] = (p.lower()[neg] - x[neg]) / d[neg]
    return float(room.min()) if room.size else math.inf


def line_search_step(
    p: FlowProblem,
    f: FlowLike,
    delta: np.ndarray,
    kappa: float,
    F_star: float,
    a: float | None = None,
) -> StepResult:
    """Best of a bounded scalar search along ``D`` and the theorem step.

    Raises:
        StallError: If neither improves the potential
    """
    a = alpha(p.m, p.U) if a is None else a
    x = _flow(f)
    d = np.asarray(delta, dtype=float)
    phi = potential(p, x, F_star, a)
    best: StepResult | None = None
    try:
        best = theorem_step(p, x, d, kappa, F_star, a)
    except (StallError, InvalidInputError):
        best = None

    eta_max = max_step(p, x, d)
    if math.isfinite(eta_max) and eta_max > 0:

        def along(tau: float) -> float:
            return potential_or_inf(p, x + eta_max * -math.expm1(-tau) * d, F_star, a)

        res = minimize_scalar(
            along, bounds=(0.0, _TAU_MAX), method="bounded", options={"xatol": 1e-9}
        )
        eta = eta_max * -math.expm1(-float(res.x))
        candidate = x + eta * d
        value = float(res.fun)
        if (
            math.isfinite(value)
            and value < phi
            and is_strictly_interior(p, candidate)
            and (best is None or value < best.potential)
        ):
            best = StepResult(InteriorFlow(candidate), eta, value, 0)

    if best is None:
        raise StallError("Neither the line search nor the theorem step improves", "ipm")
    return best


def hidden_circulation_ratio(
    p: FlowProblem, f: FlowLike, f_star: np.ndarray, F_star: float, a: float | None = None
) -> float:
    """``<g, f* - f> / <l, |f* - f|>``: quality of the direction to the optimum."""
    x = _flow(f)
    diff = np.asarray(f_star, dtype=float) - x
    denom = float(np.dot(lengths(p, x, a), np.abs(diff)))
    if denom == 0.0:
        return 0.0
    return float(np.dot(gradient(p, x, F_star, a), diff)) / denom


def find_interior_flow(p: FlowProblem, max_shrink: int = 30) -> InteriorFlow:
    """A strictly interior flow, found by solving feasibility on shrunken bounds.

    Each edge range is shrunk by ``theta (u+ - u-)`` on both sides for
    ``theta = 1/4, 1/8, ...`` until a feasible flow exists.

    Raises:
        InfeasibleError: If no strictly interior flow is found
    """
    if not is_feasible(p):
        raise InfeasibleError("Instance has no feasible flow", "ipm")
    lo, hi = p.lower(), p.upper()
    width = hi - lo
    for k in range(2, max_shrink + 2):
        theta = 2.0**-k
        flow = feasible_flow(p, (lo + theta * width).tolist(), (hi - theta * width).tolist(), 1e-12)
        if flow is None:
            continue
        try:
            return InteriorFlow.of(p, flow)
        except BarrierDomainError:
            continue
    raise InfeasibleError("No strictly interior flow found; bounds may be tight", "ipm")


def solve(
    p: FlowProblem,
    f0: FlowLike,
    kappa: float | None = None,
    max_iter: int | None = None,
    gap_tol: float | None = None,
    F_star: float | None = None,
    step_rule: StepRule | None = None,
) -> IpmReport:
    """Potential reduction along fundamental cycles of low-stretch trees.

    Every iteration builds an LSST under the current lengths, ranks its
    fundamental cycles and steps along the best one that improves the
    potential. ``F*`` comes from the exact oracle unless given.

    Args:
        p: Instance
        f0: Strictly interior starting flow
        kappa: Step quality, defaults to :func:`default_kappa`
        max_iter: Iteration limit, defaults to ``IPM_MAX_ITER``
        gap_tol: Absolute cost-gap target, defaults to
            ``IPM_GAP_RELATIVE_TOL * max(1, |F*|)``
        F_star: Optimal cost
        step_rule: ``"theorem"`` or ``"line-search"``

    Returns:
        Report with the strictly decreasing potential trace

    Raises:
        BarrierDomainError: If ``f0`` is not interior or does not conserve
    """
    flow = InteriorFlow.of(p, _flow(f0))
    F = float(optimal_cost(p)) if F_star is None else float(F_star)
    k = default_kappa(p.m) if kappa is None else kappa
    limit = settings.IPM_MAX_ITER if max_iter is None else max_iter
    tol = settings.IPM_GAP_RELATIVE_TOL * max(1.0, abs(F)) if gap_tol is None else gap_tol
    rule = settings.IPM_STEP_RULE if step_rule is None else step_rule
    a = alpha(p.m, p.U)

    gap = p.cost_of(flow.f) - F
    trace: list[float] = []
    halvings = 0
    iterations = 0
    termination: Termination = "max_iter"
    if gap <= tol:
        termination = "optimal"
    elif p.m <= p.n - 1:
        termination = "trivial"
    else:
        trace.append(potential(p, flow, F, a))
        while iterations < limit:
            T = lsst(p.graph.with_weights(lengths(p, flow, a).tolist()))
            result: StepResult | None = None
            for choice in fundamental_cycles(p, T, flow, F, a):
                if choice.ratio >= 0:
                    break
                try:
                    if rule == "theorem":
                        result = theorem_step(p, flow, choice.delta, k, F, a)
                    else:
                        result = line_search_step(p, flow, choice.delta, k, F, a)
                    break
                except (StallError, InvalidInputError):
                    continue
            if result is None:
                termination = "stall"
                break
            flow = result.flow
            halvings += result.halvings
            trace.append(result.potential)
            iterations += 1
            gap = p.cost_of(flow.f) - F
            if gap <= tol:
                termination = "optimal"
                break

    logger.info(
        "IPM finished",
        n=p.n,
        m=p.m,
        iterations=iterations,
        termination=termination,
        gap=gap,
        F_star=F,
    )
    return IpmReport(
        iterations=iterations,
        potential_trace=trace,
        final_cost=p.cost_of(flow.f),
        F_star=F,
        gap=gap,
        termination=termination,
        kappa=k,
        alpha=a,
        step_rule=rule,
        final_flow=flow.f.tolist(),
        halvings=halvings,
    )
