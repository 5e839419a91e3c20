"""Exact classical flow algorithms used as ground truth."""

from flowforge.oracle.brute import brute_force_min_cost
from flowforge.oracle.mincost import (
    MinCostResult,
    feasible_flow,
    is_feasible,
    optimal_cost,
    ssp_min_cost,
)
from flowforge.oracle.network import DirectedFlowNetwork, edmonds_karp, min_cut_by_enumeration

__all__ = [
    "DirectedFlowNetwork",
    "MinCostResult",
    "brute_force_min_cost",
    "edmonds_karp",
    "feasible_flow",
    "is_feasible",
    "min_cut_by_enumeration",
    "optimal_cost",
    "ssp_min_cost",
]
