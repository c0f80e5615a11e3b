#!/usr/bin/env python3
"""Regenerate the three figure tables (plus gnuplot scripts) over a parameter sweep.

    python scripts/reproduce_figures.py --out results/figures
    python scripts/reproduce_figures.py --sweep temperature=0.5,1,2

Each sweep point goes to its own subdirectory named after the swept value.
"""

from __future__ import annotations

import argparse
import contextlib
import io
from dataclasses import dataclass, field
from pathlib import Path

from tempwit import cli


@dataclass
class FigureRun:
    out: Path = Path("results/figures")
    samples: int = 501
    t_max: float = 10.0
    sweep_key: str | None = None
    sweep_values: list = field(default_factory=list)

    def points(self):
        if not self.sweep_key:
            yield self.out, []
            return
        for v in self.sweep_values:
            flag = "--" + self.sweep_key.replace("_", "-")
            yield self.out / f"{self.sweep_key}={v}", [flag, str(v)]


def parse(argv=None) -> FigureRun:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=FigureRun.out)
    ap.add_argument("--samples", type=int, default=FigureRun.samples)
    ap.add_argument("--t-max", type=float, default=FigureRun.t_max)
    ap.add_argument("--sweep", help="key=v1,v2,... over one model parameter (omega0, temperature, gamma1, gamma_phi)")
    a = ap.parse_args(argv)
    run = FigureRun(a.out, a.samples, a.t_max)
    if a.sweep:
        key, values = a.sweep.split("=", 1)
        run.sweep_key, run.sweep_values = key.strip(), [float(v) for v in values.split(",")]
    return run


def main(argv=None) -> int:
    run = parse(argv)
    worst = 0
    for directory, extra in run.points():
        args = ["figures", "--out", str(directory), "--samples", str(run.samples), "--t-max", str(run.t_max), *extra]
        with contextlib.redirect_stdout(io.StringIO()):
            code = cli.main(args)
        print(f"{directory}: exit {code}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
