"""Interior point method report schema."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, field_validator

Termination = Literal["optimal", "trivial", "stall", "max_iter"]


class IpmReport(BaseModel):
    """Outcome of one potential-reduction run."""

    iterations: int = Field(..., ge=0)
    potential_trace: list[float]
    final_cost: float
    F_star: float
    gap: float
    termination: Termination
    kappa: float = Field(..., gt=0)
    alpha: float = Field(..., gt=0)
    step_rule: Literal["theorem", "line-search"]
    final_flow: list[float] = Field(default_factory=list)
    halvings: int = 0

    @field_validator("potential_trace")
    @classmethod
    def validate_trace(cls, v: list[float]) -> list[float]:
        """Accepted steps must strictly decrease the potential."""
        for before, after in zip(v, v[1:]):
            if not after < before:
                raise ValueError(f"Potential trace not strictly decreasing: {before} -> {after}")
        return v

    @property
    def relative_gap(self) -> float:
        return self.gap / max(1.0, abs(self.F_star))
