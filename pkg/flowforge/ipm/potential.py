"""Barrier lengths, gradients and the potential of the interior point method."""

from __future__ import annotations

import math

import numpy as np

from flowforge.core.exceptions import BarrierDomainError, InvalidInputError
from flowforge.schemas.flow import FlowProblem, InteriorFlow, is_strictly_interior

FlowLike = InteriorFlow | np.ndarray


def alpha(m: int, U: int | float) -> float:
    """Barrier exponent ``1 / (1000 ln(mU))``.

    Raises:
        InvalidInputError: If ``mU <= 1``
    """
    if m * U <= 1:
        raise InvalidInputError(f"alpha needs mU > 1, got m={m}, U={U}", "ipm")
    return 1.0 / (1000.0 * math.log(m * U))


def default_kappa(m: int) -> float:
    """Step quality ``exp(-(ln m)^(7/8) ln ln m)``, capped at 1 for tiny graphs."""
    if m < 3:
        return 1.0
    log_m = math.log(m)
    return min(1.0, math.exp(-(log_m ** (7.0 / 8.0)) * math.log(log_m)))


def _vec(f: FlowLike) -> np.ndarray:
    return f.f if isinstance(f, InteriorFlow) else np.asarray(f, dtype=float)


def _slacks(p: FlowProblem, f: FlowLike) -> tuple[np.ndarray, np.ndarray]:
    x = _vec(f)
    if not is_strictly_interior(p, x):
        raise BarrierDomainError("Flow is on or outside the capacity bounds", "ipm")
    return p.upper() - x, x - p.lower()


def _gap(p: FlowProblem, f: FlowLike, F_star: float) -> float:
    gap = p.cost_of(_vec(f)) - F_star
    if not gap > 0:
        raise BarrierDomainError(f"Cost gap must be positive, got {gap}", "ipm")
    return gap


def lengths(p: FlowProblem, f: FlowLike, a: float | None = None) -> np.ndarray:
    """``(u+ - f)^(-1-a) + (f - u-)^(-1-a)`` per edge."""
    a = alpha(p.m, p.U) if a is None else a
    up, down = _slacks(p, f)
    return up ** (-1.0 - a) + down ** (-1.0 - a)


def gradient(p: FlowProblem, f: FlowLike, F_star: float, a: float | None = None) -> np.ndarray:
    """Gradient of :func:`potential`.

    ``20m c / (c^T f - F*) + a (u+ - f)^(-1-a) - a (f - u-)^(-1-a)``

    Raises:
        BarrierDomainError: If the gap is not positive or ``f`` is not interior
    """
    a = alpha(p.m, p.U) if a is None else a
    gap = _gap(p, f, F_star)
    up, down = _slacks(p, f)
    return 20.0 * p.m * p.costs() / gap + a * up ** (-1.0 - a) - a * down ** (-1.0 - a)


def potential(p: FlowProblem, f: FlowLike, F_star: float, a: float | None = None) -> float:
    """``20m ln(c^T f - F*) + sum((u+ - f)^(-a) + (f - u-)^(-a))``."""
    a = alpha(p.m, p.U) if a is None else a
    gap = _gap(p, f, F_star)
    up, down = _slacks(p, f)
    return 20.0 * p.m * math.log(gap) + float(np.sum(up ** (-a) + down ** (-a)))


def potential_or_inf(p: FlowProblem, f: np.ndarray, F_star: float, a: float) -> float:
    """Potential, or ``inf`` outside its domain (for line searches)."""
    try:
        return potential(p, f, F_star, a)
    except BarrierDomainError:
        return math.inf
