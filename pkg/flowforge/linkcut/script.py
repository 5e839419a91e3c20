"""Replayable operation scripts for dynamic forests.

A script starts with ``FOREST n epsilon`` and lists one operation per line::

    LINK u v g l    CUT u v     SETG u v x    SETL u v x
    PADD u v eta    AADD u v eta              QF u v
    QP u v          DET

Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

from flowforge.core.exceptions import ForestError, FormatError, ScriptDivergenceError
from flowforge.core.logging import get_logger
from flowforge.core.random import make_rng
from flowforge.formats.common import content_lines, format_real, parse_int, parse_real
from flowforge.linkcut.base import DynamicForest
from flowforge.linkcut.forest import DynTreeForest
from flowforge.linkcut.naive import NaiveForest

logger = get_logger()

COMPONENT = "link_cut"

# Steps between full component recounts during replay.
FULL_CHECK_INTERVAL = 1000

# Opcode -> number of real operands after the two vertices.
OPCODES: dict[str, int] = {
    "LINK": 2,
    "CUT": 0,
    "SETG": 1,
    "SETL": 1,
    "PADD": 1,
    "AADD": 1,
    "QF": 0,
    "QP": 0,
    "DET": -1,
}

Outcome = float | tuple[float, float] | frozenset[tuple[int, int]] | None


@dataclass(frozen=True)
class ScriptOp:
    op: str
    u: int = 0
    v: int = 0
    values: tuple[float, ...] = ()

    def to_line(self) -> str:
        if self.op == "DET":
            return "DET"
        parts = [self.op, str(self.u), str(self.v)]
        parts.extend(format_real(x) for x in self.values)
        return " ".join(parts)


@dataclass
class Script:
    n: int
    epsilon: float
    ops: list[ScriptOp] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.ops)


def parse_script(text: str) -> Script:
    """Parse a forest script.

    Raises:
        FormatError: On an unknown opcode or malformed operands
    """
    lines = list(content_lines(text))
    if not lines:
        raise FormatError("Empty script", COMPONENT, 1, "")
    number, raw, tokens = lines[0]
    if len(tokens) != 3 or tokens[0] != "FOREST":
        raise FormatError("Header must be 'FOREST n epsilon'", COMPONENT, number, raw)
    n = parse_int(tokens[1], number, raw, COMPONENT)
    epsilon = parse_real(tokens[2], number, raw, COMPONENT)
    if n < 1 or not epsilon > 0:
        raise FormatError("Need n >= 1 and epsilon > 0", COMPONENT, number, raw)

    script = Script(n, epsilon)
    for number, raw, tokens in lines[1:]:
        op = tokens[0]
        if op not in OPCODES:
            raise FormatError(f"Unknown operation {op!r}", COMPONENT, number, raw)
        arity = OPCODES[op]
        if arity < 0:
            if len(tokens) != 1:
                raise FormatError("DET takes no operands", COMPONENT, number, raw)
            script.ops.append(ScriptOp("DET"))
            continue
        if len(tokens) != 3 + arity:
            raise FormatError(f"{op} takes {2 + arity} operands", COMPONENT, number, raw)
        u = parse_int(tokens[1], number, raw, COMPONENT)
        v = parse_int(tokens[2], number, raw, COMPONENT)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"Vertex out of range for n={n}", COMPONENT, number, raw)
        values = tuple(parse_real(tok, number, raw, COMPONENT) for tok in tokens[3:])
        script.ops.append(ScriptOp(op, u, v, values))
    return script


def format_script(script: Script) -> str:
    lines = [f"FOREST {script.n} {format_real(script.epsilon)}"]
    lines.extend(op.to_line() for op in script.ops)
    return "\n".join(lines) + "\n"


def apply_op(forest: DynamicForest, op: ScriptOp) -> Outcome:
    """Run one operation and return its observable result, if any."""
    if op.op == "LINK":
        forest.link(op.u, op.v, op.values[0], op.values[1])
    elif op.op == "CUT":
        forest.cut(forest.edge_between(op.u, op.v))
    elif op.op == "SETG":
        forest.update_edge_value(forest.edge_between(op.u, op.v), "gradient", op.values[0])
    elif op.op == "SETL":
        forest.update_edge_value(forest.edge_between(op.u, op.v), "length", op.values[0])
    elif op.op == "PADD":
        forest.add_signed_flow(op.u, op.v, op.values[0])
    elif op.op == "AADD":
        forest.add_abs_flow(op.u, op.v, op.values[0])
    elif op.op == "QF":
        return forest.get_flow(forest.edge_between(op.u, op.v))
    elif op.op == "QP":
        sums = forest.path_sums(op.u, op.v)
        return (sums.gsum, sums.labs)
    elif op.op == "DET":
        return frozenset(e.ends for e in forest.detect())
    return None


def generate_script(n: int, length: int, seed: int, epsilon: float = 5.0) -> Script:
    """Random valid script, driven by a reference forest to keep every op legal."""
    if n < 2:
        raise ForestError(f"Scripts need at least two vertices, got {n}", COMPONENT)
    rng = make_rng(seed)
    mirror = NaiveForest(n, epsilon)
    script = Script(n, epsilon)
    kinds = ["LINK", "CUT", "SETG", "SETL", "PADD", "AADD", "QF", "QP", "DET"]
    weights = [0.25, 0.08, 0.1, 0.1, 0.14, 0.16, 0.07, 0.07, 0.03]

    def real(lo: float, hi: float) -> float:
        return float(rng.uniform(lo, hi))

    def pick_edge() -> tuple[int, int]:
        edges = mirror.edges()
        e = edges[int(rng.integers(len(edges)))]
        return (e.tail, e.head) if rng.random() < 0.5 else (e.head, e.tail)

    def pick_pair() -> tuple[int, int]:
        u, _ = pick_edge()
        members = sorted(mirror.component(u))
        return u, members[int(rng.integers(len(members)))]

    while len(script.ops) < length:
        kind = kinds[int(rng.choice(len(kinds), p=weights))]
        has_edges = mirror.edge_count() > 0
        if kind == "LINK" or (kind not in ("DET",) and not has_edges):
            u, v = (int(x) for x in rng.integers(n, size=2))
            if u == v or mirror.connected(u, v):
                continue
            op = ScriptOp("LINK", u, v, (real(-5.0, 5.0), real(0.1, 5.0)))
        elif kind == "CUT":
            op = ScriptOp("CUT", *pick_edge())
        elif kind == "SETG":
            op = ScriptOp("SETG", *pick_edge(), (real(-5.0, 5.0),))
        elif kind == "SETL":
            op = ScriptOp("SETL", *pick_edge(), (real(0.1, 5.0),))
        elif kind in ("PADD", "AADD"):
            low = -2.0 if kind == "PADD" else 0.0
            op = ScriptOp(kind, *pick_pair(), (real(low, 2.0),))
        elif kind == "QF":
            op = ScriptOp("QF", *pick_edge())
        elif kind == "QP":
            op = ScriptOp("QP", *pick_pair())
        else:
            op = ScriptOp("DET")
        apply_op(mirror, op)
        script.ops.append(op)
    return script


@dataclass(frozen=True)
class Divergence:
    step: int
    op: str
    expected: str
    actual: str


@dataclass
class ReplayReport:
    steps: int = 0
    queries: int = 0
    divergences: list[Divergence] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.divergences

    def raise_for_divergence(self) -> None:
        """Raise on the first divergence, if any."""
        if self.divergences:
            first = self.divergences[0]
            raise ScriptDivergenceError(
                f"Step {first.step} ({first.op}): expected {first.expected}, got {first.actual}",
                COMPONENT,
                step=first.step,
                op=first.op,
            )


def _same(a: object, b: object) -> bool:
    if isinstance(a, float) and isinstance(b, float):
        return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9)
    if isinstance(a, tuple) and isinstance(b, tuple):
        return all(math.isclose(x, y, rel_tol=1e-9, abs_tol=1e-9) for x, y in zip(a, b))
    return a == b


def _link_state_agrees(forest: DynamicForest, op: ScriptOp) -> bool:
    if op.op == "LINK":
        return forest.connected(op.u, op.v)
    if op.op == "CUT":
        return not forest.connected(op.u, op.v)
    return True


def replay_script(
    script: Script, check_every: int = FULL_CHECK_INTERVAL, stop_on_first: bool = True
) -> ReplayReport:
    """Replay a script on the link-cut forest and the reference forest side by side.

    Query results must agree to ``1e-9`` relative (or absolute) tolerance and
    DETECT sets exactly. Every successful LINK must leave its ends connected
    and every CUT must separate them, which keeps ``edges == n - components``
    from one step to the next. The count itself is recomputed on the link-cut
    forest every ``check_every`` steps and after the last one (0 disables it).

    Returns:
        Report with every divergence found
    """
    fast = DynTreeForest(script.n, script.epsilon)
    slow = NaiveForest(script.n, script.epsilon)
    report = ReplayReport()
    last = len(script.ops) - 1
    for step, op in enumerate(script.ops):
        outcomes: list[Outcome | str] = []
        for forest in (slow, fast):
            try:
                outcomes.append(apply_op(forest, op))
            except ForestError as exc:
                outcomes.append(f"error: {exc.message}")
        expected, actual = outcomes
        report.steps += 1
        if expected is not None:
            report.queries += 1
        if not _same(expected, actual):
            report.divergences.append(Divergence(step, op.to_line(), str(expected), str(actual)))
        elif actual is None and not _link_state_agrees(fast, op):
            report.divergences.append(
                Divergence(step, op.to_line(), "forest invariant", "connectivity unchanged")
            )
        elif check_every and (step % check_every == 0 or step == last):
            components = fast.component_count()
            if fast.edge_count() != script.n - components:
                report.divergences.append(
                    Divergence(step, op.to_line(), "forest invariant", f"{components} components")
                )
        if report.divergences and stop_on_first:
            break
    if report.divergences:
        logger.warning(
            "Forest script diverged", step=report.divergences[0].step, op=report.divergences[0].op
        )
    return report


def _fuzz_one(n: int, length: int, seed: int) -> tuple[Script, ReplayReport]:
    script = generate_script(n, length, seed)
    return script, replay_script(script)


def fuzz_scripts(
    n: int, length: int, seeds: Sequence[int], workers: int = 1
) -> list[tuple[int, Script, ReplayReport]]:
    """Generate and replay one script per seed, in seed order.

    Args:
        n: Forest size
        length: Operations per script
        seeds: One script seed each
        workers: Process pool size; 1 replays in this process

    Returns:
        ``(seed, script, report)`` triples
    """
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(partial(_fuzz_one, n, length), seeds))
    else:
        results = [_fuzz_one(n, length, s) for s in seeds]
    return [(s, script, report) for s, (script, report) in zip(seeds, results)]
