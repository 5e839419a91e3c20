"""Reproducible sweeps over the library's components.

Every trial draws from its own sub-seed ``trial_seed(seed, size * trials + j)``
so rows depend only on the experiment name, grid, trial count and seed.
Trials may run in a process pool; rows are assembled in grid order.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from statistics import fmean

import numpy as np

from flowforge.bench.fitting import fit_line
from flowforge.bench.output import write_result
from flowforge.core.exceptions import InvalidInputError
from flowforge.core.logging import get_logger
from flowforge.core.random import trial_seed
from flowforge.graphs.generators import erdos_renyi, random_rooted_tree
from flowforge.graphs.stretch import stretch
from flowforge.graphs.types import is_spanning_tree
from flowforge.hld.decomposition import (
    chain_intersection_stats,
    heavy_light_decomposition,
    validate_conditions,
)
from flowforge.ipm.instances import generate_interior_instance
from flowforge.ipm.potential import default_kappa
from flowforge.ipm.solver import solve
from flowforge.linkcut.forest import DynTreeForest
from flowforge.linkcut.naive import NaiveForest
from flowforge.linkcut.script import apply_op, generate_script
from flowforge.lsst.hierarchy import lsst
from flowforge.rebuild.game import derive_config, play, sample_weights
from flowforge.schemas.experiment import ExperimentConfig, ExperimentResult

logger = get_logger()

Row = list[float | int | None]
Trial = tuple[float, ...]


def _log_factor(n: int) -> float:
    """``ln n * ln ln n``."""
    return math.log(n) * math.log(math.log(n))


def lsst_trial(n: int, p: float, seed: int) -> Trial:
    """One LSST on a connected ER graph: ``(m, stretch, seconds, spanning)``."""
    G = erdos_renyi(n, p, seed)
    start = time.perf_counter()
    T = lsst(G)
    seconds = time.perf_counter() - start
    return float(G.m), stretch(G, T), seconds, float(is_spanning_tree(G, T.edge_ids))


def hld_trial(n: int, seed: int) -> Trial:
    """One random tree: ``(avg intersections, seconds, violations)``."""
    T = random_rooted_tree(n, seed)
    start = time.perf_counter()
    chains = heavy_light_decomposition(T)
    avg, _ = chain_intersection_stats(T, chains)
    seconds = time.perf_counter() - start
    report = validate_conditions(T, chains)
    violations = report.unassigned + report.shared_children + report.deep_paths
    return avg, seconds, float(violations)


def rebuild_trial(m: int, seed: int) -> Trial:
    """One game: ``(d, k, C_r, K, T, x, ledger, seconds)``."""
    cfg = derive_config(m)
    W, K = sample_weights(cfg.T, seed)
    cfg = cfg.model_copy(update={"K": K})
    start = time.perf_counter()
    transcript = play(cfg, W)
    seconds = time.perf_counter() - start
    x = cfg.C_r * cfg.K * cfg.d / cfg.gamma_g * (cfg.m + cfg.T)
    return (
        float(cfg.d),
        cfg.k,
        cfg.C_r,
        float(cfg.K),
        float(cfg.T),
        x,
        transcript.ledger_cost(),
        seconds,
    )


def linkcut_trial(n: int, length: int, seed: int) -> Trial:
    """Replay one fuzz script on both forests: per-op seconds ``(naive, splay)``."""
    script = generate_script(n, length, seed)
    per_op = []
    for cls in (NaiveForest, DynTreeForest):
        forest = cls(script.n, script.epsilon)
        start = time.perf_counter()
        for op in script.ops:
            apply_op(forest, op)
        per_op.append((time.perf_counter() - start) / max(1, len(script)))
    return per_op[0], per_op[1]


def ipm_trial(n: int, seed: int) -> Trial:
    """One solve on an interior instance with ``n`` extra edges."""
    p, f0 = generate_interior_instance(n, n, U=20, C=10, seed=seed)
    start = time.perf_counter()
    report = solve(p, f0)
    seconds = time.perf_counter() - start
    optimal = report.termination in ("optimal", "trivial")
    return float(p.m), float(report.iterations), seconds, float(optimal)


def _run_trials(
    cfg: ExperimentConfig, fn: Callable[[int, int], Trial], size: int
) -> list[Trial]:
    seeds = [trial_seed(cfg.seed, size * cfg.trials + j) for j in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            return list(pool.map(partial(fn, size), seeds))
    return [fn(size, s) for s in seeds]


def _means(trials: Sequence[Trial]) -> list[float]:
    return [fmean(col) for col in zip(*trials)]


def _timing(cfg: ExperimentConfig, value: float) -> float | None:
    return value if cfg.timings else None


def _lsst_rows(cfg: ExperimentConfig) -> list[Row]:
    rows: list[Row] = []
    for n in cfg.grid:
        if n < 3:
            raise InvalidInputError(f"LSST sweeps need n >= 3, got {n}", "bench_cli")
        fn = partial(_lsst_adapter, cfg.edge_probability)
        trials = _run_trials(cfg, fn, n)
        m, s, seconds, _ = _means(trials)
        spanning = int(sum(t[3] for t in trials))
        x = m * _log_factor(n)
        rows.append([n, m, x, s, s / x, _timing(cfg, seconds), spanning])
    return rows


def _lsst_adapter(p: float, n: int, seed: int) -> Trial:
    return lsst_trial(n, p, seed)


def _hld_rows(cfg: ExperimentConfig) -> list[Row]:
    rows: list[Row] = []
    for n in cfg.grid:
        if n < 2:
            raise InvalidInputError(f"HLD sweeps need n >= 2, got {n}", "bench_cli")
        trials = _run_trials(cfg, hld_trial, n)
        avg, seconds, _ = _means(trials)
        violations = int(sum(t[2] for t in trials))
        ln_n = math.log(n)
        rows.append(
            [n, ln_n, avg, avg / ln_n, avg / math.log10(n), _timing(cfg, seconds), violations]
        )
    return rows


def _rebuild_rows(cfg: ExperimentConfig) -> list[Row]:
    rows: list[Row] = []
    for m in cfg.grid:
        d, k, C_r, K, T, x, ledger, seconds = _means(_run_trials(cfg, rebuild_trial, m))
        rows.append([m, int(d), k, C_r, K, int(T), x, ledger, ledger / x, _timing(cfg, seconds)])
    ratios = np.array([r[8] for r in rows], dtype=float)
    if ratios.size > 1 and ratios.mean() > 0:
        logger.info(
            "Ledger ratio spread",
            coefficient_of_variation=float(ratios.std() / ratios.mean()),
        )
    return rows


def _linkcut_rows(cfg: ExperimentConfig) -> list[Row]:
    rows: list[Row] = []
    for n in cfg.grid:
        if n < 2:
            raise InvalidInputError(f"Link-cut sweeps need n >= 2, got {n}", "bench_cli")
        fn = partial(_linkcut_adapter, cfg.script_length)
        naive, splay = _means(_run_trials(cfg, fn, n))
        rows.append(
            [n, math.log(n), cfg.script_length, _timing(cfg, naive), _timing(cfg, splay)]
        )
    return rows


def _linkcut_adapter(length: int, n: int, seed: int) -> Trial:
    return linkcut_trial(n, length, seed)


def _ipm_rows(cfg: ExperimentConfig) -> list[Row]:
    rows: list[Row] = []
    for n in cfg.grid:
        if n < 2:
            raise InvalidInputError(f"IPM sweeps need n >= 2, got {n}", "bench_cli")
        trials = _run_trials(cfg, ipm_trial, n)
        m, iterations, seconds, _ = _means(trials)
        optimal = int(sum(t[3] for t in trials))
        x = m * math.log(m) / default_kappa(round(m)) ** 2
        rows.append([n, m, x, iterations, _timing(cfg, seconds), optimal])
    return rows


# name -> (rows builder, columns, x column, y column)
EXPERIMENTS: dict[str, tuple[Callable[[ExperimentConfig], list[Row]], list[str], str, str]] = {
    "lsst-stretch": (
        _lsst_rows,
        ["n", "m", "x", "mean_stretch", "normalized_stretch", "mean_seconds", "spanning"],
        "x",
        "mean_stretch",
    ),
    "lsst-time": (
        _lsst_rows,
        ["n", "m", "x", "mean_stretch", "normalized_stretch", "mean_seconds", "spanning"],
        "x",
        "mean_seconds",
    ),
    "hld-intersections": (
        _hld_rows,
        ["n", "ln_n", "avg_intersections", "quotient", "quotient_log10", "seconds", "violations"],
        "ln_n",
        "avg_intersections",
    ),
    "hld-time": (
        _hld_rows,
        ["n", "ln_n", "avg_intersections", "quotient", "quotient_log10", "seconds", "violations"],
        "n",
        "seconds",
    ),
    "rebuild-cost": (
        _rebuild_rows,
        ["m", "d", "k", "C_r", "K", "T", "x", "ledger_cost", "ledger_ratio", "seconds"],
        "x",
        "ledger_cost",
    ),
    "linkcut-time": (
        _linkcut_rows,
        ["n", "ln_n", "ops", "naive_seconds_per_op", "splay_seconds_per_op"],
        "ln_n",
        "splay_seconds_per_op",
    ),
    "ipm-time": (
        _ipm_rows,
        ["n", "m", "x", "mean_iterations", "mean_seconds", "optimal"],
        "x",
        "mean_iterations",
    ),
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run a sweep, fit its line and write it to ``cfg.out`` when set.

    The fit is skipped when fewer than two distinct x values exist or the y
    column is blank because timings are disabled.

    Raises:
        InvalidInputError: If the name is unknown or a grid size is too small
    """
    if cfg.name not in EXPERIMENTS:
        raise InvalidInputError(f"Unknown experiment {cfg.name!r}", "bench_cli")
    build, columns, x_col, y_col = EXPERIMENTS[cfg.name]
    logger.info("Running experiment", name=cfg.name, grid=cfg.grid, trials=cfg.trials)
    rows = build(cfg)

    xi, yi = columns.index(x_col), columns.index(y_col)
    xs = [r[xi] for r in rows]
    ys = [r[yi] for r in rows]
    fit = None
    if None not in ys and len(set(xs)) >= 2:
        fit = fit_line([float(x or 0.0) for x in xs], [float(y or 0.0) for y in ys])
    result = ExperimentResult(
        config=cfg, columns=columns, rows=rows, x_column=x_col, y_column=y_col, fit=fit
    )
    if cfg.out is not None:
        write_result(result, cfg.out, cfg.fmt)
        logger.info("Wrote experiment output", path=str(cfg.out), format=cfg.fmt)
    return result
