"""Command-line entry point.

    tempwit {evolve,spectrum,pdm,chsh,region,figures,selfcheck} [options]

Configuration precedence: built-in defaults < --config file < command-line
flags; the TEMPWIT_OUT environment variable overrides --out. Exit codes:
0 success, 1 domain/configuration error, 2 accuracy error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import chsh, export, lindblad, pdm, response, selfcheck, witness
from .model import (
    AccuracyError,
    BlochState,
    ContractViolation,
    DegenerateNormalization,
    ModelParams,
    ParameterError,
)

SUBCOMMANDS = ("evolve", "spectrum", "pdm", "chsh", "region", "figures", "selfcheck")


class ConfigError(ValueError):
    pass


def _floats(text) -> tuple:
    try:
        return tuple(float(v) for v in str(text).split(","))
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from None


# key -> converter; the value None marks "not given"
KEYS = {
    "omega0": float,
    "temperature": float,
    "gamma1": float,
    "gamma2": float,
    "gamma_phi": float,
    "hbar": float,
    "kB": float,
    "t_min": float,
    "t_max": float,
    "samples": int,
    "t": float,
    "omega_points": int,
    "omega_lo": float,
    "omega_hi": float,
    "omega_mod": float,
    "drive": _floats,
    "initial": _floats,
    "step": float,
    "numeric": lambda v: str(v).lower() in ("1", "true", "yes", "on"),
    "mapping": str,
    "negativity_floor": float,
    "out": str,
    "format": str,
}


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams = field(default_factory=ModelParams)
    t_min: float = 0.0
    t_max: float = 10.0
    samples: int = 501
    t: float = 0.0
    omega_mod: float = 1.0
    drive: tuple = (1.0, 0.0, 0.0)
    initial: tuple = (0.0, 0.0, 1.0)
    step: float | None = None
    numeric: bool = False
    mapping: witness.RegionMapping = field(default_factory=witness.RegionMapping)
    out: str = "."
    format: str = "csv"

    @property
    def t_range(self):
        return (self.t_min, self.t_max)


def read_config_file(path) -> dict:
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def parse_config(path=None, overrides: dict | None = None) -> RunConfig:
    raw = read_config_file(path) if path else {}
    raw.update({k: v for k, v in (overrides or {}).items() if v is not None})
    unknown = sorted(set(raw) - set(KEYS))
    if unknown:
        raise ConfigError(f"unknown configuration key(s): {', '.join(unknown)}")
    values = {}
    for key, value in raw.items():
        try:
            values[key] = KEYS[key](value) if isinstance(value, str) else value
        except (TypeError, ValueError):
            raise ConfigError(f"{key}: cannot parse {value!r}") from None

    gamma1 = values.get("gamma1", ModelParams.gamma1)
    if "gamma2" in values:
        gamma_phi = values["gamma2"] - gamma1 / 2
        if gamma_phi < -1e-15:
            raise ConfigError(f"gamma2: {values['gamma2']} < gamma1/2 = {gamma1 / 2} (pure dephasing would be negative)")
        if "gamma_phi" in values and abs(values["gamma_phi"] - gamma_phi) > 1e-12:
            raise ConfigError("gamma2: inconsistent with gamma_phi = gamma2 - gamma1/2")
        values["gamma_phi"] = max(gamma_phi, 0.0)
    param_keys = ("omega0", "temperature", "gamma1", "gamma_phi", "hbar", "kB")
    try:
        params = ModelParams(**{k: values[k] for k in param_keys if k in values})
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc

    mapping_kw = {}
    if "mapping" in values:
        mapping_kw["strategy"] = values["mapping"]
    for key in ("negativity_floor", "omega_points", "omega_lo", "omega_hi"):
        if key in values:
            mapping_kw[key] = values[key]
    try:
        mapping = witness.RegionMapping(**mapping_kw)
    except witness.ConfigurationError as exc:
        raise ConfigError(str(exc)) from exc

    rest = {k: values[k] for k in ("t_min", "t_max", "samples", "t", "omega_mod", "drive", "initial",
                                   "step", "numeric", "out", "format") if k in values}
    cfg = RunConfig(params=params, mapping=mapping, **rest)
    if not cfg.t_min < cfg.t_max:
        raise ConfigError(f"t_min: must be < t_max (got {cfg.t_min} >= {cfg.t_max})")
    if cfg.t_min < 0:
        raise ConfigError("t_min: must be >= 0")
    if cfg.samples < 2:
        raise ConfigError("samples: must be >= 2")
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format: must be csv or json, got {cfg.format!r}")
    if len(cfg.drive) != 3:
        raise ConfigError("drive: needs three components")
    if len(cfg.initial) != 3 or math.fsum(v * v for v in cfg.initial) > 1 + 1e-12:
        raise ConfigError("initial: needs a Bloch vector of length <= 1")
    if cfg.step is not None and not cfg.step > 0:
        raise ConfigError("step: must be > 0")
    return cfg


# ---------- subcommands ----------
def _times(cfg: RunConfig) -> np.ndarray:
    return np.linspace(cfg.t_min, cfg.t_max, cfg.samples)


def run_evolve(cfg: RunConfig, out: Path) -> list[Path]:
    start = BlochState(*cfg.initial)
    ts = _times(cfg)
    if cfg.numeric:
        step = cfg.step or lindblad.default_step(cfg.params)
        A, b = lindblad.bloch_generator(cfg.params)
        # integrate piecewise between output samples so rows land exactly on ts
        states = [lindblad.evolve(start, cfg.params, float(ts[0])).as_array()]
        for t_prev, t_next in zip(ts[:-1], ts[1:]):
            _, seg = lindblad.rk4_affine(A, b, states[-1], float(t_next - t_prev), step, record_every=10**12)
            states.append(seg[-1])
        states = np.array(states)
    else:
        states = np.array([lindblad.evolve(start, cfg.params, float(t)).as_array() for t in ts])
    traj = lindblad.Trajectory(ts, states)
    return [export.write_table(out / "trajectory", traj.columns, list(traj.rows()), cfg.format)]


def run_spectrum(cfg: RunConfig, out: Path) -> list[Path]:
    samples = response.heat_capacity_spectrum(cfg.params, cfg.mapping.omega_grid(cfg.params))
    paths = [export.write_table(out / "spectrum", response.HeatCapacitySample.columns,
                                [s.row() for s in samples], cfg.format)]
    tensor = response.response_tensor(cfg.params, cfg.drive, cfg.omega_mod)
    paths.append(export.write_table(out / "tensor", tensor.columns, list(tensor.rows()), cfg.format))
    return paths


def run_pdm(cfg: RunConfig, out: Path) -> list[Path]:
    R = pdm.two_time_pdm(cfg.params, cfg.t)
    paths = [export.write_json(out / "pdm.json", R.to_json())]
    rows = []
    for t in _times(cfg):
        spec = pdm.spectrum_analytic(cfg.params, float(t))
        rows.append((float(t), *map(float, spec.eigenvalues), spec.negativity))
    columns = ("t", "lambda1", "lambda2", "lambda3", "lambda4", "negativity")
    paths.append(export.write_table(out / "pdm_spectrum", columns, rows, cfg.format))
    return paths


def run_chsh(cfg: RunConfig, out: Path) -> list[Path]:
    rows = [(r.t, r.s_max_closed, r.s_max_horodecki, chsh.CLASSICAL_BOUND, chsh.TSIRELSON_BOUND)
            for r in chsh.closed_vs_horodecki(cfg.params, _times(cfg))]
    columns = ("t", "s_max_closed", "s_max_horodecki", "classical_bound", "tsirelson_bound")
    return [export.write_table(out / "chsh", columns, rows, cfg.format)]


def run_region(cfg: RunConfig, out: Path) -> list[Path]:
    scan = witness.figure_data(cfg.params, 3, cfg.t_range, cfg.samples, cfg.mapping)
    return [export.write_table(out / "region", scan.columns, list(scan.rows()), cfg.format)]


def run_figures(cfg: RunConfig, out: Path) -> list[Path]:
    paths = []
    for which in (1, 2, 3):
        scan = witness.figure_data(cfg.params, which, cfg.t_range, cfg.samples, cfg.mapping)
        paths.append(export.write_table(out / f"fig{which}", scan.columns, list(scan.rows()), cfg.format))
        paths.append(export.write_plot_script(out, which))
    return paths


def run_selfcheck(cfg: RunConfig, out: Path) -> int:
    checks = selfcheck.run_checks(cfg.params)
    print(selfcheck.format_table(checks))
    failed = [c for c in checks if c.passed is False]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks without failure")
    return 2 if failed else 0


RUNNERS = {
    "evolve": run_evolve,
    "spectrum": run_spectrum,
    "pdm": run_pdm,
    "chsh": run_chsh,
    "region": run_region,
    "figures": run_figures,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tempwit", description=__doc__.splitlines()[0])
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", help="flat key=value configuration file")
    parser.add_argument("--out", help="output directory (TEMPWIT_OUT overrides)")
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--t-min", type=float)
    parser.add_argument("--t-max", type=float)
    parser.add_argument("--samples", type=int)
    parser.add_argument("--t", type=float, help="elapsed time for the pdm subcommand")
    parser.add_argument("--omega0", type=float)
    parser.add_argument("--temperature", type=float)
    parser.add_argument("--gamma1", type=float)
    parser.add_argument("--gamma2", type=float)
    parser.add_argument("--gamma-phi", type=float)
    parser.add_argument("--hbar", type=float)
    parser.add_argument("--kB", type=float)
    parser.add_argument("--omega-mod", type=float)
    parser.add_argument("--drive", help="delta_omega as x,y,z")
    parser.add_argument("--initial", help="initial Bloch vector x,y,z for evolve")
    parser.add_argument("--step", type=float, help="RK4 step for evolve --numeric")
    parser.add_argument("--numeric", action="store_const", const=True, help="integrate with RK4")
    parser.add_argument("--mapping", help="region mapping strategy: combined, negativity, chsh")
    parser.add_argument("--negativity-floor", type=float)
    parser.add_argument("--omega-points", type=int)
    return parser


def run(subcommand: str, cfg: RunConfig) -> int:
    """Execute one subcommand; returns the process exit code."""
    if subcommand not in SUBCOMMANDS:
        print(f"error: unknown subcommand {subcommand!r}", file=sys.stderr)
        return 1
    try:
        out = Path(cfg.out)
        if subcommand == "selfcheck":
            return run_selfcheck(cfg, out)
        out.mkdir(parents=True, exist_ok=True)
        for path in RUNNERS[subcommand](cfg, out):
            print(path)
        return 0
    except (ConfigError, ParameterError, ContractViolation, DegenerateNormalization,
            witness.ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AccuracyError as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {k: v for k, v in vars(args).items() if k not in ("subcommand", "config")}
    env_out = os.environ.get("TEMPWIT_OUT")
    if env_out:
        overrides["out"] = env_out
    try:
        cfg = parse_config(args.config, overrides)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(args.subcommand, cfg)


if __name__ == "__main__":
    sys.exit(main())
