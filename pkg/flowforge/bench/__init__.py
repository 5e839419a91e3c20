"""Experiment sweeps, line fits and file roundtrips."""

from flowforge.bench.experiments import EXPERIMENTS, run_experiment
from flowforge.bench.fitting import fit_line
from flowforge.bench.output import render, write_result
from flowforge.bench.roundtrip import io_roundtrip, roundtrip_text

__all__ = [
    "EXPERIMENTS",
    "fit_line",
    "io_roundtrip",
    "render",
    "roundtrip_text",
    "run_experiment",
    "write_result",
]
