"""Rebuilding-game configuration schema."""

from __future__ import annotations

import math

from pydantic import BaseModel, Field, model_validator


class RebuildConfig(BaseModel):
    """Parameters of one rebuilding game."""

    m: int = Field(..., ge=1)
    d: int = Field(..., ge=0)
    k: float = Field(..., gt=1.0)
    gamma_g: float = Field(..., gt=0.0, lt=1.0)
    C_r: float = Field(..., ge=1.0)
    K: int = Field(..., ge=1)
    T: int = Field(..., ge=1)

    @model_validator(mode="after")
    def check_reduction(self) -> RebuildConfig:
        """``k`` must equal ``m ** (1 / d)``."""
        if self.d > 0 and not math.isclose(self.k**self.d, self.m, rel_tol=1e-9):
            raise ValueError(f"k={self.k} does not satisfy k**d == m for m={self.m}, d={self.d}")
        return self

    def level_cost(self, i: int) -> float:
        """Cost of a fix at level ``i``."""
        return self.C_r * self.m / self.k**i

    def staleness_span(self, level: int) -> int:
        """Rounds after which a level is stale: ``ceil(gamma_g * m / k**level)``."""
        return max(1, math.ceil(self.gamma_g * self.m / self.k**level - 1e-12))

    def cost_abscissa(self) -> float:
        """``(C_r * K * (d + 1) / gamma_g) * (m + T)``, the scale of the ledger bound."""
        return self.C_r * self.K * (self.d + 1) / self.gamma_g * (self.m + self.T)
