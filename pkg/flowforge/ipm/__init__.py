"""Potential-reduction interior point method over fundamental cycles."""

from flowforge.ipm.instances import generate_interior_instance
from flowforge.ipm.potential import alpha, default_kappa, gradient, lengths, potential
from flowforge.ipm.solver import (
    CycleChoice,
    best_fundamental_cycle,
    find_interior_flow,
    fundamental_cycles,
    hidden_circulation_ratio,
    line_search_step,
    solve,
    step,
    theorem_step,
)

__all__ = [
    "CycleChoice",
    "alpha",
    "best_fundamental_cycle",
    "default_kappa",
    "find_interior_flow",
    "fundamental_cycles",
    "generate_interior_instance",
    "gradient",
    "hidden_circulation_ratio",
    "lengths",
    "line_search_step",
    "potential",
    "solve",
    "step",
    "theorem_step",
]
