"""DIMACS-style min-cost flow instances with lower bounds.

Lines are ``c`` comments, one ``p min n m`` header, ``n v d`` demand lines
and ``a u v lo hi cost`` arc lines. Vertices are numbered from 1 in the file
and from 0 in memory; ``d`` is the required inflow minus outflow.
"""

from __future__ import annotations

from pydantic import ValidationError

from flowforge.core.exceptions import FormatError
from flowforge.formats.common import content_lines, parse_int
from flowforge.schemas.flow import FlowProblem

COMPONENT = "formats"


def parse_min_cost(text: str) -> FlowProblem:
    """Parse a min-cost flow instance.

    Raises:
        FormatError: On a malformed or misplaced line, a count mismatch or an
            instance that fails validation
    """
    n = m = -1
    demands: dict[int, int] = {}
    arcs: list[tuple[int, int]] = []
    lo: list[int] = []
    hi: list[int] = []
    cost: list[int] = []
    header_line = 1
    for number, raw, tokens in content_lines(text, comment="c"):
        kind, args = tokens[0], tokens[1:]
        if kind == "p":
            if n >= 0:
                raise FormatError("Duplicate problem line", COMPONENT, number, raw)
            if len(args) != 3 or args[0] != "min":
                raise FormatError("Problem line must be 'p min n m'", COMPONENT, number, raw)
            n = parse_int(args[1], number, raw, COMPONENT)
            m = parse_int(args[2], number, raw, COMPONENT)
            if n < 1 or m < 0:
                raise FormatError("Need n >= 1 and m >= 0", COMPONENT, number, raw)
            header_line = number
            continue
        if n < 0:
            raise FormatError("Data before the problem line", COMPONENT, number, raw)
        values = [parse_int(tok, number, raw, COMPONENT) for tok in args]
        if kind == "n" and len(values) == 2:
            v, d = values
            if not 1 <= v <= n:
                raise FormatError(f"Vertex {v} out of range 1..{n}", COMPONENT, number, raw)
            if v - 1 in demands:
                raise FormatError(f"Duplicate demand for vertex {v}", COMPONENT, number, raw)
            demands[v - 1] = d
        elif kind == "a" and len(values) == 5:
            u, v, a_lo, a_hi, c = values
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError("Arc endpoint out of range", COMPONENT, number, raw)
            if u == v:
                raise FormatError(f"Self-loop at vertex {u}", COMPONENT, number, raw)
            arcs.append((u - 1, v - 1))
            lo.append(a_lo)
            hi.append(a_hi)
            cost.append(c)
        else:
            raise FormatError(f"Unrecognized line kind {kind!r}", COMPONENT, number, raw)

    if n < 0:
        raise FormatError("Missing problem line", COMPONENT, 1, "")
    if len(arcs) != m:
        raise FormatError(f"Header announces {m} arcs, found {len(arcs)}", COMPONENT, header_line)
    dem = [demands.get(v, 0) for v in range(n)]
    try:
        return FlowProblem.build(n, arcs, cost, lo, hi, dem)
    except (ValidationError, ValueError) as exc:
        raise FormatError(f"Invalid instance: {exc}", COMPONENT) from exc


def format_min_cost(p: FlowProblem) -> str:
    """Serialize canonically: header, nonzero demands by vertex, arcs by id."""
    out = [f"p min {p.n} {p.m}"]
    out.extend(f"n {v + 1} {d}" for v, d in enumerate(p.dem) if d != 0)
    for e, edge in enumerate(p.graph.edges):
        out.append(f"a {edge.u + 1} {edge.v + 1} {p.u_lo[e]} {p.u_hi[e]} {p.c[e]}")
    return "\n".join(out) + "\n"
