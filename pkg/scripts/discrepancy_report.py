#!/usr/bin/env python3
"""Side-by-side numbers for the places where two routes to the same quantity disagree.

Prints a plain-text report and optionally writes it as CSV:

* closed-form S_max vs Horodecki (T^dagger T) vs unconjugated (T^T T) vs optimiser
* closed-form two-time matrix vs the Pauli-sum builder fed by symmetrized correlators
* extinction of the C'' region as a function of the negativity floor
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from tempwit import DEFAULTS, chsh, export, pdm, witness


@dataclass
class ReportConfig:
    times: tuple = (0.0, 0.5, 1.0, 2.0, 3.0, 5.0)
    floors: tuple = (0.0, 1e-5, 1e-4, 3e-4, 1e-3)
    out: Path | None = None


def bell_rows(cfg):
    for t in cfg.times:
        R = pdm.two_time_pdm(DEFAULTS, t)
        T = chsh.correlation_matrix(R)
        _, opt = chsh.optimize_directions(R)
        yield (t, chsh.s_max_closed_form(DEFAULTS, t).value, chsh.s_max_horodecki(T),
               chsh.s_max_unconjugated(T), float(opt), float(np.max(np.abs(T.imag))))


def builder_rows(cfg):
    for t in cfg.times:
        general = pdm.build_pdm_general(pdm.thermal_oracle(DEFAULTS, (0.0, t)), 2)
        closed = pdm.two_time_pdm(DEFAULTS, t)
        ev_general = np.linalg.eigvalsh(general)
        yield (t, float(np.max(np.abs(general - closed.operator()))), float(ev_general.min()),
               float(pdm.spectrum_analytic(DEFAULTS, t).min_eigenvalue))


def floor_rows(cfg):
    for floor in cfg.floors:
        ext = witness.region_extinction(DEFAULTS, witness.RegionMapping(negativity_floor=floor), (0.0, 10.0), 2001)
        windows = witness.negativity_window(DEFAULTS, (0.0, 10.0), 2001, floor=floor)
        yield (floor, ext, len(windows))


SECTIONS = {
    "bell": (("t", "closed", "horodecki", "unconjugated", "optimiser", "max_imag_T"), bell_rows),
    "builder": (("t", "max_dev", "min_ev_pauli_sum", "min_ev_closed"), builder_rows),
    "floor": (("floor", "extinction", "negativity_windows"), floor_rows),
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, help="directory for CSV copies of each section")
    cfg = ReportConfig(out=ap.parse_args(argv).out)
    if cfg.out:
        cfg.out.mkdir(parents=True, exist_ok=True)
    for name, (columns, producer) in SECTIONS.items():
        rows = list(producer(cfg))
        print(f"== {name}")
        print("  ".join(f"{c:>14s}" for c in columns))
        for r in rows:
            print("  ".join(f"{v:>14.8g}" if isinstance(v, float) else f"{v!s:>14}" for v in r))
        if cfg.out:
            export.write_csv(cfg.out / f"{name}.csv", columns, rows)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
