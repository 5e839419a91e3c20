"""Validated configuration and report records."""

from flowforge.schemas.experiment import ExperimentConfig, ExperimentResult, FitResult
from flowforge.schemas.ipm import IpmReport
from flowforge.schemas.rebuild import RebuildConfig

__all__ = ["ExperimentConfig", "ExperimentResult", "FitResult", "IpmReport", "RebuildConfig"]
