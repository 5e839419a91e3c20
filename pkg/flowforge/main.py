"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from flowforge import __version__
from flowforge.asymptotics import crossover_table, derivative_threshold, ipm_stationary
from flowforge.bench.experiments import run_experiment
from flowforge.bench.output import format_cell, render
from flowforge.bench.roundtrip import io_roundtrip
from flowforge.core.config import settings
from flowforge.core.exceptions import FlowForgeError, FormatError
from flowforge.core.logging import get_logger, setup_logging
from flowforge.core.random import trial_seed
from flowforge.formats.common import read_text, write_text
from flowforge.formats.dimacs import parse_min_cost
from flowforge.ipm.solver import find_interior_flow, solve
from flowforge.linkcut.script import format_script, fuzz_scripts
from flowforge.oracle.mincost import ssp_min_cost
from flowforge.schemas.experiment import ExperimentConfig

logger = get_logger()

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2

# subcommand -> (choice flag values, experiment name per choice)
BENCHES: dict[str, dict[str, str]] = {
    "lsst-bench": {"stretch": "lsst-stretch", "time": "lsst-time"},
    "hld-bench": {"intersections": "hld-intersections", "time": "hld-time"},
    "rebuild-bench": {"cost": "rebuild-cost"},
    "linkcut-bench": {"time": "linkcut-time"},
    "ipm-bench": {"time": "ipm-time"},
}


def _grid(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"grid must be comma-separated integers: {text!r}"
        ) from None


def _add_sweep_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    parser.add_argument("--trials", type=int, default=0, help="0 uses the default count")
    parser.add_argument("--grid", type=_grid, default=[], help="comma-separated sizes")
    parser.add_argument("--out", type=Path, default=None)
    parser.add_argument("--format", dest="fmt", choices=("csv", "dat"), default="csv")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument(
        "--no-timings", dest="timings", action="store_false", help="blank timing columns"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowforge",
        description=f"{settings.PROJECT_NAME}: almost-linear min-cost flow components",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for command, choices in BENCHES.items():
        bench = sub.add_parser(command, help=f"run the {'/'.join(choices.values())} sweep")
        bench.add_argument("--experiment", choices=tuple(choices), default=next(iter(choices)))
        _add_sweep_flags(bench)
        if command == "lsst-bench":
            bench.add_argument("--p", dest="edge_probability", type=float, default=0.1)
        if command == "linkcut-bench":
            bench.add_argument("--length", dest="script_length", type=int, default=1000)

    ipm = sub.add_parser("ipm-solve", help="solve a DIMACS instance with the interior point method")
    ipm.add_argument("path", type=Path)
    ipm.add_argument("--step-rule", choices=("theorem", "line-search"), default=None)
    ipm.add_argument("--max-iter", type=int, default=None)
    ipm.add_argument("--with-flow", action="store_true", help="include the final flow")

    mcmf = sub.add_parser("mcmf", help="exact min-cost flow of a DIMACS instance")
    mcmf.add_argument("path", type=Path)

    cross = sub.add_parser("crossover", help="asymptotic crossover table")
    cross.add_argument("--C", dest="constants", type=float, nargs="+", default=[0.5, 1.0, 2.0])

    fuzz = sub.add_parser("fuzz-linkcut", help="replay random scripts against the naive forest")
    fuzz.add_argument("--n", type=int, default=256)
    fuzz.add_argument("--length", type=int, default=10_000)
    fuzz.add_argument("--scripts", type=int, default=100)
    fuzz.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    fuzz.add_argument("--save", type=Path, default=None, help="directory for diverging scripts")
    fuzz.add_argument("--workers", type=int, default=1)

    rt = sub.add_parser("roundtrip", help="parse and re-serialize a file")
    rt.add_argument("path", type=Path)
    rt.add_argument("--kind", choices=("graph", "tree", "min-cost", "script"), default=None)
    rt.add_argument("--out", type=Path, default=None)
    return parser


def _bench(args: argparse.Namespace) -> int:
    cfg = ExperimentConfig(
        name=BENCHES[args.command][args.experiment],
        grid=args.grid,
        trials=args.trials,
        seed=args.seed,
        out=args.out,
        fmt=args.fmt,
        workers=args.workers,
        timings=args.timings,
        **{k: getattr(args, k) for k in ("edge_probability", "script_length") if hasattr(args, k)},
    )
    result = run_experiment(cfg)
    if cfg.out is None:
        sys.stdout.write(render(result, cfg.fmt))
    return EXIT_OK


def _ipm_solve(args: argparse.Namespace) -> int:
    problem = parse_min_cost(read_text(args.path))
    f0 = find_interior_flow(problem)
    report = solve(problem, f0, max_iter=args.max_iter, step_rule=args.step_rule)
    exclude = None if args.with_flow else {"final_flow"}
    print(report.model_dump_json(indent=2, exclude=exclude))
    return EXIT_OK if report.termination in ("optimal", "trivial") else EXIT_INVALID


def _mcmf(args: argparse.Namespace) -> int:
    result = ssp_min_cost(parse_min_cost(read_text(args.path)))
    print(json.dumps({"feasible": result.feasible, "cost": result.cost, "flow": result.flow}))
    return EXIT_OK if result.feasible else EXIT_INVALID


def _crossover(args: argparse.Namespace) -> int:
    print("C,log_m,log10_m,ratio_log10_at_1e10,ratio_log10_at_1e1000")
    for row in crossover_table(args.constants):
        print(",".join(format_cell(float(v)) for v in row))
    x_root, min_log10 = ipm_stationary()
    print(f"# stationary x_root={format_cell(x_root)} min_log10={format_cell(min_log10)}")
    print(f"# derivative_threshold={format_cell(derivative_threshold())}")
    return EXIT_OK


def _fuzz(args: argparse.Namespace) -> int:
    failures = 0
    seeds = [trial_seed(args.seed, i) for i in range(args.scripts)]
    runs = fuzz_scripts(args.n, args.length, seeds, args.workers)
    for i, (seed, script, report) in enumerate(runs):
        if not report.ok:
            failures += 1
            first = report.divergences[0]
            logger.error("Script diverged", script=i, seed=seed, step=first.step, op=first.op)
            if args.save is not None:
                write_text(args.save / f"diverged-{seed}.txt", format_script(script))
    print(f"{args.scripts - failures}/{args.scripts} scripts agree")
    return EXIT_OK if failures == 0 else EXIT_INVALID


def _roundtrip(args: argparse.Namespace) -> int:
    result = io_roundtrip(args.path, args.kind)
    if args.out is not None:
        write_text(args.out, result.serialized)
    print(f"{result.kind}: {'identical' if result.identical else 'normalized'}")
    return EXIT_OK


HANDLERS = {
    **{command: _bench for command in BENCHES},
    "ipm-solve": _ipm_solve,
    "mcmf": _mcmf,
    "crossover": _crossover,
    "fuzz-linkcut": _fuzz,
    "roundtrip": _roundtrip,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI.

    Returns:
        0 on success, 1 on unreadable or malformed input files, 2 on
        validation failures
    """
    setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return HANDLERS[args.command](args)
    except (OSError, FormatError) as exc:
        logger.error("Input error", command=args.command, error=str(exc))
        return EXIT_IO
    except (FlowForgeError, ValidationError) as exc:
        logger.error("Validation failure", command=args.command, error=str(exc))
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
