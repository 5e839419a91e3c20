"""Least-squares line fits for sweep output."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from flowforge.core.exceptions import InvalidInputError
from flowforge.schemas.experiment import FitResult


def fit_line(xs: Sequence[float], ys: Sequence[float]) -> FitResult:
    """Ordinary least squares fit of ``ys`` against ``xs``.

    Raises:
        InvalidInputError: With fewer than two points, mismatched lengths or
            all ``xs`` equal
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise InvalidInputError(
            f"Need at least two paired points, got {x.size} and {y.size}", "bench_cli"
        )
    if np.ptp(x) == 0:
        raise InvalidInputError("All x values are equal; the slope is undefined", "bench_cli")
    A = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    residual = float(np.linalg.norm(A @ np.array([slope, intercept]) - y))
    return FitResult(slope=float(slope), intercept=float(intercept), residual=residual)
