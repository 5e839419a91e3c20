"""Rebuilding game between a deterministic player and a worst-case adversary.

Rounds are numbered from 1 and ``W[t - 1]`` is the weight of round ``t``.
Level ``l`` is stale at round ``t`` once ``t - prevs[l]`` reaches
``ceil(gamma_g * m / k**l)``. The adversary forces a fix whenever
``sum_i W(prevs[i]) > 2 (d + 1) W(t)``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from flowforge.core.exceptions import InvalidInputError, StrategyError
from flowforge.core.logging import get_logger
from flowforge.core.random import make_rng
from flowforge.schemas.rebuild import RebuildConfig

logger = get_logger()

FixReason = Literal["stale", "weight"]


def derive_config(m: int, K: int = 7) -> RebuildConfig:
    """Parameter schedule for size ``m`` (natural logarithms throughout).

    ``d = floor(5 (ln m)^(1/8))``, ``C_r = exp((ln m)^(7/8) ln ln m)``,
    ``gamma_g = 1 / C_r``, ``Q = m C_r``, ``T = floor((m + Q) C_r)`` and
    ``k = m^(1/d)``.

    Raises:
        InvalidInputError: If ``m < 8``
    """
    if m < 8:
        raise InvalidInputError(f"The schedule needs m >= 8, got {m}", "rebuilding_game")
    log_m = math.log(m)
    d = math.floor(5.0 * log_m ** (1.0 / 8.0))
    C_r = math.exp(log_m ** (7.0 / 8.0) * math.log(log_m))
    Q = m * C_r
    T = math.floor((m + Q) * C_r)
    k = m ** (1.0 / d)
    if k < 2.0:
        logger.warning("Reduction parameter below 2", m=m, d=d, k=round(k, 6))
    return RebuildConfig(m=m, d=d, k=k, gamma_g=1.0 / C_r, C_r=C_r, K=K, T=T)


def sample_weights(T: int, seed: int) -> tuple[np.ndarray, int]:
    """I.i.d. Uniform(1, 1000) round weights and the range ``K``.

    ``K`` is the smallest integer strictly above ``ln max W``, which equals
    ``ceil(ln max W)`` unless the maximum is an exact power of ``e``.
    """
    if T < 1:
        raise InvalidInputError(f"Need at least one round, got {T}", "rebuilding_game")
    W = make_rng(seed).uniform(1.0, 1000.0, size=T)
    return W, math.floor(math.log(float(W.max()))) + 1


def weights_from_vectors(vectors: Sequence[Sequence[float]] | np.ndarray) -> tuple[np.ndarray, int]:
    """Round weights as the l1 norms of per-round weight vectors, with their range."""
    W = np.abs(np.asarray(vectors, dtype=float)).sum(axis=1)
    if W.size == 0 or not np.all(W > 0):
        raise InvalidInputError("Round weights must be positive", "rebuilding_game")
    K = max(1, math.floor(max(abs(math.log(float(W.max()))), abs(math.log(float(W.min()))))) + 1)
    return W, K


@dataclass
class RebuildState:
    """Last rebuild round per level, counters and the cost ledger."""

    prevs: list[int]
    s: int = 1
    t: int = 1
    cost: float = 0.0

    @classmethod
    def fresh(cls, cfg: RebuildConfig) -> RebuildState:
        return cls(prevs=[1] * (cfg.d + 1))

    @property
    def rounds_since(self) -> list[int]:
        return [self.t - p for p in self.prevs]

    def apply_fix(self, i: int, t: int, cfg: RebuildConfig) -> None:
        if not 0 <= i < len(self.prevs):
            raise InvalidInputError(
                f"Level {i} out of range 0..{len(self.prevs) - 1}", "rebuilding_game"
            )
        for j in range(i, len(self.prevs)):
            self.prevs[j] = t
        self.s += 1
        self.cost += cfg.level_cost(i)


def forcing_state(
    state: RebuildState,
    cfg: RebuildConfig,
    W: Sequence[float] | np.ndarray,
    spans: Sequence[int] | None = None,
) -> tuple[bool, set[int]]:
    """Whether the adversary can force a fix, and which levels are stale.

    ``spans`` are the per-level staleness spans, computed from ``cfg`` when omitted.
    """
    if spans is None:
        spans = [cfg.staleness_span(l) for l in range(cfg.d + 1)]
    total = sum(float(W[p - 1]) for p in state.prevs)
    forced = total > 2 * (cfg.d + 1) * float(W[state.t - 1])
    stale = {l for l, (p, s) in enumerate(zip(state.prevs, spans)) if state.t - p >= s}
    return forced, stale


def fix(state: RebuildState, i: int, t: int, cfg: RebuildConfig) -> RebuildState:
    """A fix at level ``i`` in round ``t``: levels ``j >= i`` are rebuilt.

    Returns:
        The updated state; the input state is left untouched
    """
    new = RebuildState(list(state.prevs), state.s, t, state.cost)
    new.apply_fix(i, t, cfg)
    return new


@dataclass(frozen=True)
class RoundRecord:
    t: int
    W: float
    levels: tuple[int, ...]
    reasons: tuple[FixReason, ...]
    cumulative_cost: float

    @property
    def n_fixes(self) -> int:
        return len(self.levels)


@dataclass
class Transcript:
    """Outcome of a game: totals and, optionally, one record per round."""

    config: RebuildConfig
    cost: float = 0.0
    fixes_per_level: list[int] = field(default_factory=list)
    stale_fixes: int = 0
    weight_fixes: int = 0
    max_fixes_in_round: int = 0
    rounds: list[RoundRecord] = field(default_factory=list)

    @property
    def total_fixes(self) -> int:
        return sum(self.fixes_per_level)

    def ledger_cost(self) -> float:
        """Cost recomputed from the per-level fix counts."""
        return sum(c * self.config.level_cost(i) for i, c in enumerate(self.fixes_per_level))

    def ledger_bound(self, factor: float = 3.0) -> float:
        return factor * self.config.cost_abscissa()

    def to_csv_rows(self) -> list[list[str]]:
        rows = [["t", "W", "n_fixes", "levels", "cumulative_cost"]]
        for r in self.rounds:
            levels = ";".join(map(str, r.levels))
            rows.append([str(r.t), repr(r.W), str(r.n_fixes), levels, repr(r.cumulative_cost)])
        return rows


def play(
    cfg: RebuildConfig,
    W: Sequence[float] | np.ndarray,
    record_rounds: bool = False,
    check_rounds: bool = False,
) -> Transcript:
    """Play ``cfg.T`` rounds against the always-forcing adversary.

    Each round the player first fixes the smallest stale level, if any, then
    answers weight forcing with fixes at levels ``d, d-1, ..., 0`` until the
    condition clears. Rounds in which no level is due and the weight sum is
    under the forcing line are skipped without consulting the adversary.

    Args:
        cfg: Game parameters
        W: Round weights, at least ``cfg.T`` of them
        record_rounds: Keep a per-round record
        check_rounds: Re-test every round's end state against the adversary

    Returns:
        The transcript

    Raises:
        InvalidInputError: If fewer than ``cfg.T`` weights are given
        StrategyError: If weight forcing survives ``d + 1`` fixes in one round,
            or a checked round ends forced or stale
    """
    if len(W) < cfg.T:
        raise InvalidInputError(f"Need {cfg.T} round weights, got {len(W)}", "rebuilding_game")
    weights = [float(x) for x in W[: cfg.T]]
    spans = [cfg.staleness_span(l) for l in range(cfg.d + 1)]
    limit = 2 * (cfg.d + 1)
    state = RebuildState.fresh(cfg)
    transcript = Transcript(cfg, fixes_per_level=[0] * (cfg.d + 1))

    def prevs_weight() -> float:
        return sum(weights[p - 1] for p in state.prevs)

    def due() -> int:
        return min(p + s for p, s in zip(state.prevs, spans))

    prev_sum = prevs_weight()
    next_due = due()
    for t in range(1, cfg.T + 1):
        state.t = t
        w_t = weights[t - 1]
        done: list[int] = []
        reasons: list[FixReason] = []

        if t >= next_due or prev_sum > limit * w_t:
            forced, stale = forcing_state(state, cfg, weights, spans)
            if stale:
                level = min(stale)
                state = fix(state, level, t, cfg)
                done.append(level)
                reasons.append("stale")
                transcript.stale_fixes += 1
                forced, _ = forcing_state(state, cfg, weights, spans)

            level = cfg.d
            while forced:
                if level < 0:
                    raise StrategyError(
                        f"Weight forcing not cleared after {cfg.d + 1} fixes in round {t}",
                        "rebuilding_game",
                    )
                state = fix(state, level, t, cfg)
                done.append(level)
                reasons.append("weight")
                transcript.weight_fixes += 1
                level -= 1
                forced, _ = forcing_state(state, cfg, weights, spans)

            if done:
                for level in done:
                    transcript.fixes_per_level[level] += 1
                prev_sum = prevs_weight()
                next_due = due()
                transcript.max_fixes_in_round = max(transcript.max_fixes_in_round, len(done))

        if check_rounds and forcing_state(state, cfg, weights, spans) != (False, set()):
            raise StrategyError(f"Round {t} ended forced or stale", "rebuilding_game")
        if record_rounds:
            transcript.rounds.append(RoundRecord(t, w_t, tuple(done), tuple(reasons), state.cost))

    transcript.cost = state.cost
    logger.info(
        "Rebuilding game finished",
        m=cfg.m,
        d=cfg.d,
        rounds=cfg.T,
        fixes=transcript.total_fixes,
        cost=state.cost,
    )
    return transcript
