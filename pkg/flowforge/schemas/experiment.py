"""Experiment configuration, result and line-fit schemas."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from flowforge.core.config import settings

ExperimentName = Literal[
    "lsst-stretch",
    "lsst-time",
    "hld-intersections",
    "hld-time",
    "rebuild-cost",
    "linkcut-time",
    "ipm-time",
]
OutputFormat = Literal["csv", "dat"]

DEFAULT_GRIDS: dict[str, list[int]] = {
    "lsst-stretch": list(range(50, 401, 50)),
    "lsst-time": list(range(50, 401, 50)),
    "hld-intersections": [2**i for i in range(6, 13)],
    "hld-time": [2**i for i in range(6, 13)],
    "rebuild-cost": list(range(8, 65)),
    "linkcut-time": list(range(100, 1001, 100)),
    "ipm-time": list(range(4, 13)),
}

DEFAULT_TRIALS: dict[str, int] = {
    "lsst-stretch": 10,
    "lsst-time": 10,
    "hld-intersections": 1000,
    "hld-time": 1000,
    "rebuild-cost": 1,
    "linkcut-time": 20,
    "ipm-time": 10,
}


class FitResult(BaseModel):
    """Least-squares line ``y = slope * x + intercept``."""

    slope: float
    intercept: float
    residual: float = Field(..., ge=0)

    @model_validator(mode="after")
    def check_finite(self) -> FitResult:
        if not all(math.isfinite(x) for x in (self.slope, self.intercept, self.residual)):
            raise ValueError("Fit parameters must be finite")
        return self

    def predict(self, x: float) -> float:
        return self.slope * x + self.intercept


class ExperimentConfig(BaseModel):
    """One sweep: experiment name, size grid, trials per point and seed."""

    name: ExperimentName
    grid: list[int] = Field(default_factory=list)
    trials: int = Field(default=0, ge=0)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0)
    out: Path | None = None
    fmt: OutputFormat = "csv"
    workers: int = Field(default=1, ge=1)
    timings: bool = True
    edge_probability: float = Field(default=0.1, gt=0, le=1)
    script_length: int = Field(default=1000, ge=1)

    @field_validator("grid")
    @classmethod
    def validate_grid(cls, v: list[int]) -> list[int]:
        if any(x < 1 for x in v):
            raise ValueError("Grid sizes must be positive")
        return sorted(set(v))

    @model_validator(mode="after")
    def fill_defaults(self) -> ExperimentConfig:
        """Empty grid or zero trials fall back to the experiment's defaults."""
        if not self.grid:
            self.grid = list(DEFAULT_GRIDS[self.name])
        if self.trials == 0:
            self.trials = DEFAULT_TRIALS[self.name]
        return self


class ExperimentResult(BaseModel):
    """Aggregated rows of a sweep, one per grid point, plus the fitted line."""

    config: ExperimentConfig
    columns: list[str]
    rows: list[list[float | int | None]]
    x_column: str
    y_column: str
    fit: FitResult | None = None

    @model_validator(mode="after")
    def check_shape(self) -> ExperimentResult:
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(f"Row {row} does not match columns {self.columns}")
        for col in (self.x_column, self.y_column):
            if col not in self.columns:
                raise ValueError(f"Unknown column {col!r}")
        return self

    def column(self, name: str) -> list[float | int | None]:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]
