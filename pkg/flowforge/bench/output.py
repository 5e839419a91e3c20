"""CSV and gnuplot data rendering of sweep results."""

from __future__ import annotations

import csv
import io
from pathlib import Path

from flowforge.core.config import settings
from flowforge.formats.common import write_text
from flowforge.schemas.experiment import ExperimentResult, OutputFormat

Cell = float | int | None


def format_cell(value: Cell, missing: str = "") -> str:
    if value is None:
        return missing
    if isinstance(value, int):
        return str(value)
    return f"{value:.{settings.CSV_PRECISION}g}"


def _fit_line(result: ExperimentResult) -> str | None:
    if result.fit is None:
        return None
    fit = result.fit
    return (
        f"# fit x={result.x_column} y={result.y_column} "
        f"slope={format_cell(fit.slope)} intercept={format_cell(fit.intercept)} "
        f"residual={format_cell(fit.residual)}"
    )


def render_csv(result: ExperimentResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([format_cell(v) for v in row])
    fit = _fit_line(result)
    if fit is not None:
        buf.write(fit + "\n")
    return buf.getvalue()


def render_dat(result: ExperimentResult) -> str:
    """Whitespace-separated columns with a ``#`` header; missing cells print ``NaN``."""
    lines = ["# " + " ".join(result.columns)]
    lines.extend(" ".join(format_cell(v, "NaN") for v in row) for row in result.rows)
    fit = _fit_line(result)
    if fit is not None:
        lines.append(fit)
    return "\n".join(lines) + "\n"


def render(result: ExperimentResult, fmt: OutputFormat = "csv") -> str:
    return render_csv(result) if fmt == "csv" else render_dat(result)


def write_result(result: ExperimentResult, path: str | Path, fmt: OutputFormat = "csv") -> None:
    write_text(path, render(result, fmt))
