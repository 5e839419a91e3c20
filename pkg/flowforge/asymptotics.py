"""Closed-form crossover and stationary-point computations, in log space."""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable
from typing import NamedTuple

from scipy.optimize import bisect

from flowforge.core.exceptions import InvalidInputError, RootNotBracketedError
from flowforge.core.logging import get_logger

logger = get_logger()

LN10 = math.log(10.0)

# Bisection works on y = ln x; the default upper end is x = 1e20.
_Y_HIGH = 20.0 * LN10
_Y_CEILING = 1e6
_Y_XTOL = 1e-13


class CrossoverRow(NamedTuple):
    C: float
    log_m: float
    log10_m: float
    ratio_log10_at_1e10: float
    ratio_log10_at_1e1000: float


def _bisect_log(h: Callable[[float], float], y_low: float, y_high: float) -> float:
    """Root in ``y = ln x`` of ``h``; the upper end doubles until the sign changes."""
    lo_val = h(y_low)
    if lo_val == 0.0:
        return y_low
    while h(y_high) * lo_val > 0:
        if y_high > _Y_CEILING:
            raise RootNotBracketedError(
                f"No sign change in [{y_low:.6g}, {y_high:.6g}] (ln-space)", "asymptotics"
            )
        y_high *= 2.0
    return float(bisect(h, y_low, y_high, xtol=_Y_XTOL))


def crossover_logm(C: float) -> float:
    """Largest ``x`` with ``2 x^(1/8) = C ln x``: the log of the crossover ``m``.

    Left of its minimiser ``(4C)^8`` the difference ``2 x^(1/8) - C ln x``
    falls, right of it it grows, so the largest root lies to the right.
    When the difference is nonnegative on all of ``[e, inf)`` the inequality
    holds from ``e`` on and ``e`` is returned.

    Raises:
        InvalidInputError: If ``C <= 0``
        RootNotBracketedError: If no sign change is found
    """
    if C <= 0:
        raise InvalidInputError(f"C must be positive, got {C}", "asymptotics")

    def h(y: float) -> float:
        return 2.0 * math.exp(y / 8.0) - C * y

    y_min = max(1.0, 8.0 * math.log(4.0 * C))
    if h(y_min) >= 0:
        return math.e
    return math.exp(_bisect_log(h, y_min, max(_Y_HIGH, 2.0 * y_min)))


def ek_ratio_log10(log10_m: float, C: float) -> float:
    """``log10(m exp(C (ln m)^(7/8) ln ln m) / m^3)`` without leaving log space."""
    if log10_m <= 0:
        raise InvalidInputError(f"log10_m must be positive, got {log10_m}", "asymptotics")
    ln_m = log10_m * LN10
    if C == 0:
        return -2.0 * log10_m
    return (C * ln_m**0.875 * math.log(ln_m) - 2.0 * ln_m) / LN10


def stationary_value_log10(x: float) -> float:
    """``log10(m ln m exp(-(ln m)^(7/8) ln ln m))`` at ``ln m = x``."""
    if x <= 0:
        raise InvalidInputError(f"ln m must be positive, got {x}", "asymptotics")
    ln_x = math.log(x)
    return (x + ln_x - x**0.875 * ln_x) / LN10


def ipm_bound_log10(log10_m: float) -> float:
    """log10 of ``m ln m exp(-(ln m)^(7/8) ln ln m)``, the iteration bound shape."""
    if log10_m <= 0:
        raise InvalidInputError(f"log10_m must be positive, got {log10_m}", "asymptotics")
    return stationary_value_log10(log10_m * LN10)


def ipm_stationary() -> tuple[float, float]:
    """Root of ``7 ln x + 8 = 8 x^(1/8) - 8 x^(-7/8)`` and the bound's log10 there.

    Returns:
        ``(x_root, min_log10)`` with ``min_log10 = stationary_value_log10(x_root)``
    """

    def h(y: float) -> float:
        return 8.0 * math.exp(y / 8.0) - 8.0 * math.exp(-7.0 * y / 8.0) - 7.0 * y - 8.0

    # h falls until the derivative threshold and rises after it.
    y_low = math.log(derivative_threshold())
    x_root = math.exp(_bisect_log(h, y_low, _Y_HIGH))
    value = stationary_value_log10(x_root)
    logger.debug("Stationary point", x_root=x_root, min_log10=value)
    return x_root, value


def derivative_threshold() -> float:
    """Root of ``x^(1/8) - 7 x^(-7/8) = 7``; past it the derivative comparison holds."""

    def h(y: float) -> float:
        return math.exp(y / 8.0) - 7.0 * math.exp(-7.0 * y / 8.0) - 7.0

    return math.exp(_bisect_log(h, 1.0, _Y_HIGH))


def crossover_table(Cs: Iterable[float]) -> list[CrossoverRow]:
    """Crossover and example ratios for each constant in ``Cs``."""
    rows = []
    for C in Cs:
        x = crossover_logm(C)
        rows.append(
            CrossoverRow(C, x, x / LN10, ek_ratio_log10(10.0, C), ek_ratio_log10(1000.0, C))
        )
    return rows
