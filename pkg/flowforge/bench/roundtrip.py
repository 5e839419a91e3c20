"""Parse-then-serialize checks for every supported file format."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal

from flowforge.core.exceptions import FormatError
from flowforge.core.logging import get_logger
from flowforge.formats.common import content_lines, read_text
from flowforge.formats.dimacs import format_min_cost, parse_min_cost
from flowforge.formats.graph import format_graph, format_tree, parse_graph, parse_tree
from flowforge.linkcut.script import format_script, parse_script

logger = get_logger()

FileKind = Literal["graph", "tree", "min-cost", "script"]

_CODECS: dict[FileKind, tuple[Callable[[str], Any], Callable[[Any], str]]] = {
    "graph": (parse_graph, format_graph),
    "tree": (parse_tree, format_tree),
    "min-cost": (parse_min_cost, format_min_cost),
    "script": (parse_script, format_script),
}


@dataclass(frozen=True)
class RoundtripResult:
    kind: FileKind
    parsed: Any
    serialized: str
    identical: bool


def detect_kind(text: str) -> FileKind:
    """Guess the format from the first meaningful line.

    Raises:
        FormatError: If the file is empty or the header matches no format
    """
    for number, raw, tokens in content_lines(text):
        if tokens[0] == "c":
            continue
        if tokens[0] == "p":
            return "min-cost"
        if tokens[0] == "FOREST":
            return "script"
        if len(tokens) == 1:
            return "tree"
        if len(tokens) == 2:
            return "graph"
        raise FormatError("Unrecognized file header", "bench_cli", number, raw)
    raise FormatError("Empty file", "bench_cli", 1, "")


def roundtrip_text(text: str, kind: FileKind | None = None) -> RoundtripResult:
    kind = detect_kind(text) if kind is None else kind
    parse, serialize = _CODECS[kind]
    parsed = parse(text)
    serialized = serialize(parsed)
    return RoundtripResult(kind, parsed, serialized, serialized == text)


def io_roundtrip(path: str | Path, kind: FileKind | None = None) -> RoundtripResult:
    """Parse a file and re-serialize it; canonical files come back byte-identical.

    Raises:
        OSError: If the file cannot be read
        FormatError: On a malformed line
    """
    result = roundtrip_text(read_text(path), kind)
    logger.info("Roundtrip", path=str(path), kind=result.kind, identical=result.identical)
    return result
