"""Deterministic random number generation."""

from __future__ import annotations

import numpy as np

from flowforge.core.config import settings

MASK64 = (1 << 64) - 1


def trial_seed(seed: int, trial: int, multiplier: int | None = None) -> int:
    """Derive the sub-seed of a trial.

    The sub-seed is ``seed XOR (trial * multiplier) mod 2**64``; trial 0 keeps
    the base seed.

    Args:
        seed: Base 64-bit seed
        trial: Trial (or resample) index
        multiplier: Odd mixing constant, defaults to ``SUBSEED_MULTIPLIER``

    Returns:
        64-bit sub-seed
    """
    mult = settings.SUBSEED_MULTIPLIER if multiplier is None else multiplier
    return (seed ^ (trial * mult)) & MASK64


def make_rng(seed: int) -> np.random.Generator:
    """Create a PCG64 generator for a 64-bit seed."""
    return np.random.Generator(np.random.PCG64(seed & MASK64))
