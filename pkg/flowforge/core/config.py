"""Application configuration using Pydantic Settings."""

from __future__ import annotations

from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings, overridable through ``FLOWFORGE_*`` environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="FLOWFORGE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    PROJECT_NAME: str = "FlowForge"
    ENVIRONMENT: Literal["development", "production", "testing"] = "development"
    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR"] | None = None

    # Randomness
    DEFAULT_SEED: int = Field(default=42, ge=0)
    SUBSEED_MULTIPLIER: int = 0x9E3779B97F4A7C15
    ER_MAX_RESAMPLES: int = Field(default=1000, ge=1)

    # Low-stretch trees
    LSST_DISTANCE_SOURCE: Literal["remainder", "original"] = "remainder"
    LSST_DEPTH_FACTOR: int = Field(default=10, ge=1)
    LSST_DEPTH_SLACK: int = Field(default=20, ge=0)

    # Dynamic trees
    LINKCUT_EPSILON: float = Field(default=1.0, gt=0)

    # Interior point method
    IPM_MAX_HALVINGS: int = Field(default=60, ge=0)
    IPM_MAX_ITER: int = Field(default=5000, ge=1)
    IPM_STEP_RULE: Literal["theorem", "line-search"] = "line-search"
    IPM_GAP_RELATIVE_TOL: float = Field(default=1e-6, gt=0)

    # Output
    CSV_PRECISION: int = Field(default=12, ge=1, le=17)

    @field_validator("SUBSEED_MULTIPLIER")
    @classmethod
    def validate_multiplier(cls, v: int) -> int:
        """Sub-seed multiplier must be an odd 64-bit value."""
        if v <= 0 or v >= 1 << 64 or v % 2 == 0:
            raise ValueError("SUBSEED_MULTIPLIER must be an odd positive 64-bit integer")
        return v


settings = Settings()
