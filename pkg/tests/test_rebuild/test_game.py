"""Tests for the rebuilding game."""

from __future__ import annotations

import math

import numpy as np
import pytest
from pydantic import ValidationError

from flowforge.bench.fitting import fit_line
from flowforge.core.exceptions import InvalidInputError
from flowforge.rebuild import (
    RebuildState,
    derive_config,
    fix,
    forcing_state,
    game,
    play,
    sample_weights,
    weights_from_vectors,
)
from flowforge.schemas.rebuild import RebuildConfig


@pytest.fixture
def small_cfg() -> RebuildConfig:
    """Three levels with spans 8, 2, 1 and level costs 32, 8, 2."""
    return RebuildConfig(m=16, d=2, k=4.0, gamma_g=0.5, C_r=2.0, K=1, T=10)


class TestDeriveConfig:
    """Test the parameter schedule."""

    def test_m8(self) -> None:
        """Test the schedule at m = 8."""
        cfg = derive_config(8)
        log_m = math.log(8)
        assert cfg.d == 5
        assert cfg.C_r == pytest.approx(math.exp(log_m**0.875 * math.log(log_m)))
        assert cfg.gamma_g == pytest.approx(1.0 / cfg.C_r)
        assert cfg.T == math.floor((8 + 8 * cfg.C_r) * cfg.C_r)
        assert cfg.k**cfg.d == pytest.approx(8.0)

    def test_grows_with_m(self) -> None:
        """Test C_r and T increase with m."""
        a, b = derive_config(16), derive_config(64)
        assert b.C_r > a.C_r
        assert b.T > a.T

    def test_too_small(self) -> None:
        """Test m below 8 is rejected."""
        with pytest.raises(InvalidInputError):
            derive_config(7)

    def test_inconsistent_reduction_rejected(self) -> None:
        """Test k must satisfy k**d == m."""
        with pytest.raises(ValidationError):
            RebuildConfig(m=16, d=2, k=3.0, gamma_g=0.5, C_r=2.0, K=1, T=10)


class TestWeights:
    """Test round weight sampling."""

    def test_uniform_range_and_K(self) -> None:
        """Test weights lie in [1, 1000) and K is floor(ln max) + 1."""
        W, K = sample_weights(1000, seed=4)
        assert W.shape == (1000,)
        assert W.min() >= 1.0
        assert W.max() < 1000.0
        assert K == math.floor(math.log(W.max())) + 1
        assert K == 7

    def test_deterministic(self) -> None:
        """Test equal seeds give equal weights."""
        np.testing.assert_array_equal(sample_weights(50, 1)[0], sample_weights(50, 1)[0])

    def test_no_rounds(self) -> None:
        """Test zero rounds are rejected."""
        with pytest.raises(InvalidInputError):
            sample_weights(0, seed=1)

    def test_from_vectors(self) -> None:
        """Test per-round l1 norms."""
        W, K = weights_from_vectors([[1.0, -2.0], [3.0, 0.0]])
        np.testing.assert_allclose(W, [3.0, 3.0])
        assert K == 2

    def test_zero_vector_rejected(self) -> None:
        """Test a zero round weight is rejected."""
        with pytest.raises(InvalidInputError):
            weights_from_vectors([[0.0, 0.0]])


class TestState:
    """Test fixes and forcing on explicit states."""

    def test_fix_rebuilds_levels_at_and_below(self, small_cfg: RebuildConfig) -> None:
        """Test a fix at level 1 resets levels 1 and 2 only."""
        state = RebuildState.fresh(small_cfg)
        new = fix(state, 1, 5, small_cfg)
        assert new.prevs == [1, 5, 5]
        assert new.s == 2
        assert new.cost == pytest.approx(8.0)
        assert state.prevs == [1, 1, 1]

    def test_fix_bad_level(self, small_cfg: RebuildConfig) -> None:
        """Test fixing a level outside 0..d is rejected."""
        with pytest.raises(InvalidInputError):
            fix(RebuildState.fresh(small_cfg), 3, 2, small_cfg)

    def test_forcing_and_staleness(self, small_cfg: RebuildConfig) -> None:
        """Test heavy past weights force a fix and spans mark stale levels."""
        state = RebuildState(prevs=[1, 1, 1], t=3)
        forced, stale = forcing_state(state, small_cfg, [1000.0, 1.0, 1.0])
        assert forced
        assert stale == {1, 2}
        assert state.rounds_since == [2, 2, 2]

    def test_not_forced_under_flat_weights(self, small_cfg: RebuildConfig) -> None:
        """Test equal weights never force."""
        forced, _ = forcing_state(RebuildState.fresh(small_cfg), small_cfg, [1.0] * 10)
        assert not forced


class TestPlay:
    """Test full games."""

    def test_staleness_schedule(self, small_cfg: RebuildConfig) -> None:
        """Test flat weights produce only stale fixes at rounds 1 + j * span."""
        transcript = play(small_cfg, [1.0] * 10, record_rounds=True)
        assert transcript.fixes_per_level == [1, 3, 5]
        assert transcript.stale_fixes == 9
        assert transcript.weight_fixes == 0
        assert transcript.cost == pytest.approx(32 + 3 * 8 + 5 * 2)
        assert transcript.ledger_cost() == pytest.approx(transcript.cost)
        by_round = {r.t: r.levels for r in transcript.rounds}
        assert by_round[9] == (0,)
        assert [t for t, lv in by_round.items() if lv == (1,)] == [3, 5, 7]

    def test_weight_forcing_cascade(self, small_cfg: RebuildConfig) -> None:
        """Test a weight drop triggers fixes at levels d, d-1, ..., 0."""
        cfg = small_cfg.model_copy(update={"T": 3})
        transcript = play(cfg, [1000.0, 1.0, 1.0], record_rounds=True)
        second = transcript.rounds[1]
        assert second.levels == (2, 2, 1, 0)
        assert second.reasons == ("stale", "weight", "weight", "weight")
        assert transcript.max_fixes_in_round == 4
        assert transcript.weight_fixes == 3

    def test_too_few_weights(self, small_cfg: RebuildConfig) -> None:
        """Test fewer than T weights are rejected."""
        with pytest.raises(InvalidInputError):
            play(small_cfg, [1.0] * 9)

    def test_csv_rows(self, small_cfg: RebuildConfig) -> None:
        """Test the per-round CSV has a header and one row per round."""
        rows = play(small_cfg, [1.0] * 10, record_rounds=True).to_csv_rows()
        assert rows[0] == ["t", "W", "n_fixes", "levels", "cumulative_cost"]
        assert len(rows) == 11
        assert rows[1][2] == "0"

    @pytest.mark.parametrize("m", [8, 16, 32])
    def test_ledger_below_bound(self, m: int) -> None:
        """Test the ledger stays below three times the cost abscissa."""
        cfg = derive_config(m)
        W, K = sample_weights(cfg.T, seed=m)
        cfg = cfg.model_copy(update={"K": K})
        transcript = play(cfg, W)
        assert transcript.ledger_cost() == pytest.approx(transcript.cost)
        assert transcript.cost <= transcript.ledger_bound()
        assert transcript.max_fixes_in_round <= cfg.d + 2

    def test_every_fix_goes_through_fix(
        self, small_cfg: RebuildConfig, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test the player mutates its state only through fix."""
        calls: list[tuple[int, int]] = []

        def counting_fix(state: RebuildState, i: int, t: int, cfg: RebuildConfig) -> RebuildState:
            calls.append((i, t))
            return fix(state, i, t, cfg)

        monkeypatch.setattr(game, "fix", counting_fix)
        cfg = small_cfg.model_copy(update={"T": 3})
        transcript = play(cfg, [1000.0, 1.0, 1.0])
        assert calls == [(2, 2), (2, 2), (1, 2), (0, 2), (2, 3)]
        assert len(calls) == transcript.total_fixes

    @pytest.mark.parametrize("m", [8, 12, 16])
    def test_rounds_end_unforced_and_fresh(self, m: int) -> None:
        """Test every round ends with no forcing and no stale level."""
        cfg = derive_config(m)
        W, K = sample_weights(cfg.T, seed=m)
        transcript = play(cfg.model_copy(update={"K": K}), W, check_rounds=True)
        assert transcript.total_fixes > 0


@pytest.mark.slow
class TestGameAcceptance:
    """Test full games over the acceptance range of m."""

    @pytest.mark.parametrize("m", range(8, 65))
    def test_invariant_and_ledger(self, m: int) -> None:
        """Test the end-of-round invariant holds and the ledger stays under its bound."""
        cfg = derive_config(m)
        W, K = sample_weights(cfg.T, seed=m)
        cfg = cfg.model_copy(update={"K": K})
        transcript = play(cfg, W, check_rounds=True)
        assert transcript.cost <= transcript.ledger_bound()

    def test_cost_slope_is_stable_across_seeds(self) -> None:
        """Test the fitted cost-per-abscissa slope varies by under 25% between seeds."""
        slopes = []
        for seed in range(5):
            xs, ys = [], []
            for m in (8, 16, 24, 32, 40):
                cfg = derive_config(m)
                W, K = sample_weights(cfg.T, seed=seed * 1000 + m)
                cfg = cfg.model_copy(update={"K": K})
                xs.append(cfg.cost_abscissa())
                ys.append(play(cfg, W).cost)
            slopes.append(fit_line(xs, ys).slope)
        assert float(np.std(slopes) / np.mean(slopes)) < 0.25
