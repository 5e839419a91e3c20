"""Graph (``n m`` then ``u v w``) and rooted-tree (child lists) files."""

from __future__ import annotations

from flowforge.core.exceptions import FormatError, InvalidInputError
from flowforge.formats.common import content_lines, format_real, parse_int, parse_real
from flowforge.graphs.types import RootedTreeArray, WeightedGraph

COMPONENT = "formats"


def parse_graph(text: str) -> WeightedGraph:
    """Parse a graph file.

    Raises:
        FormatError: On a malformed line, a count mismatch or an invalid edge
    """
    lines = list(content_lines(text))
    if not lines:
        raise FormatError("Empty graph file", COMPONENT, 1, "")
    number, raw, tokens = lines[0]
    if len(tokens) != 2:
        raise FormatError("Header must be 'n m'", COMPONENT, number, raw)
    n = parse_int(tokens[0], number, raw, COMPONENT)
    m = parse_int(tokens[1], number, raw, COMPONENT)
    if n < 0 or m < 0:
        raise FormatError("Counts must be nonnegative", COMPONENT, number, raw)
    if len(lines) - 1 != m:
        raise FormatError(
            f"Header announces {m} edges, found {len(lines) - 1}", COMPONENT, number, raw
        )
    edges = []
    for number, raw, tokens in lines[1:]:
        if len(tokens) != 3:
            raise FormatError("Edge line must be 'u v w'", COMPONENT, number, raw)
        u = parse_int(tokens[0], number, raw, COMPONENT)
        v = parse_int(tokens[1], number, raw, COMPONENT)
        w = parse_real(tokens[2], number, raw, COMPONENT)
        if u == v:
            raise FormatError(f"Self-loop at vertex {u}", COMPONENT, number, raw)
        if not (0 <= u < n and 0 <= v < n) or not w > 0:
            raise FormatError(
                "Edge endpoints out of range or weight not positive", COMPONENT, number, raw
            )
        edges.append((u, v, w))
    try:
        return WeightedGraph(n, edges)
    except InvalidInputError as exc:
        raise FormatError(exc.message, COMPONENT) from exc


def format_graph(G: WeightedGraph) -> str:
    """Serialize a graph in edge-id order."""
    out = [f"{G.n} {G.m}"]
    out.extend(f"{e.u} {e.v} {format_real(e.w)}" for e in G.edges)
    return "\n".join(out) + "\n"


def parse_tree(text: str) -> RootedTreeArray:
    """Parse a tree file: ``n`` then one child list per vertex, ``-`` for none."""
    lines = list(content_lines(text))
    if not lines:
        raise FormatError("Empty tree file", COMPONENT, 1, "")
    number, raw, tokens = lines[0]
    if len(tokens) != 1:
        raise FormatError("Header must be 'n'", COMPONENT, number, raw)
    n = parse_int(tokens[0], number, raw, COMPONENT)
    if n < 1 or len(lines) - 1 != n:
        raise FormatError(
            f"Expected {n} child lists, found {len(lines) - 1}", COMPONENT, number, raw
        )
    children = []
    for number, raw, tokens in lines[1:]:
        if tokens == ["-"]:
            children.append([])
        else:
            children.append([parse_int(tok, number, raw, COMPONENT) for tok in tokens])
    try:
        return RootedTreeArray(children)
    except InvalidInputError as exc:
        raise FormatError(exc.message, COMPONENT) from exc


def format_tree(T: RootedTreeArray) -> str:
    out = [str(T.n)]
    out.extend(" ".join(map(str, kids)) if kids else "-" for kids in T.children)
    return "\n".join(out) + "\n"
