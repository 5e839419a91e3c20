"""Shared helpers for the line-oriented text formats."""

from __future__ import annotations

import math
from collections.abc import Iterator
from pathlib import Path

from flowforge.core.exceptions import FormatError


def format_real(x: float) -> str:
    """Canonical text of a real: integral values print without a fraction."""
    x = float(x)
    if math.isfinite(x) and x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def parse_int(token: str, line_number: int, raw: str, component: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(
            f"Expected an integer, got {token!r}", component, line_number, raw
        ) from None


def parse_real(token: str, line_number: int, raw: str, component: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise FormatError(
            f"Expected a number, got {token!r}", component, line_number, raw
        ) from None
    if not math.isfinite(value):
        raise FormatError(f"Non-finite number {token!r}", component, line_number, raw)
    return value


def content_lines(text: str, comment: str = "#") -> Iterator[tuple[int, str, list[str]]]:
    """Yield ``(line number, raw line, tokens)`` for non-blank, non-comment lines."""
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith(comment):
            continue
        yield number, raw, stripped.split()


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def write_text(path: str | Path, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
