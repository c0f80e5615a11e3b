"""Deterministic CSV/JSON writers. Floats use repr(), the shortest round-trip form."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, Sequence


def fmt(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "dtype"):
        return fmt(value.item())
    return str(value)


def write_csv(path, columns: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    lines = [",".join(columns)]
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row has {len(row)} fields, header has {len(columns)}")
        lines.append(",".join(fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item"):
        return _jsonable(value.item())
    return value


def write_json(path, obj) -> Path:
    path = Path(path)
    path.write_text(json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n")
    return path


def write_table(stem, columns, rows, fmt_name: str = "csv") -> Path:
    """Write ``stem.csv`` or ``stem.json`` (a list of records)."""
    stem = Path(stem)
    if fmt_name == "csv":
        return write_csv(stem.with_suffix(".csv"), columns, rows)
    records = [dict(zip(columns, row)) for row in rows]
    return write_json(stem.with_suffix(".json"), records)


GNUPLOT = {
    1: """set datafile separator ','
set key autotitle columnhead
set xlabel 't'
set ylabel 'PDM eigenvalue'
plot 'fig1.csv' using 1:2 with lines, '' using 1:3 with lines, '' using 1:4 with lines, '' using 1:5 with lines, 0 notitle dt 2
""",
    2: """set datafile separator ','
set key autotitle columnhead
set xlabel 't'
set ylabel 'S_max'
plot 'fig2.csv' using 1:2 with lines, '' using 1:3 with lines dt 3, 2 title 'classical' dt 2, 2*sqrt(2) title 'Tsirelson' dt 2
""",
    3: """set datafile separator ','
set key autotitle columnhead
set xlabel 't'
set ylabel "C'' (weighted)"
plot 'fig3.csv' using 1:2:3 with filledcurves title 'violation region'
""",
}


def write_plot_script(directory, which: int) -> Path:
    path = Path(directory) / f"fig{which}.gp"
    path.write_text(GNUPLOT[which])
    return path
