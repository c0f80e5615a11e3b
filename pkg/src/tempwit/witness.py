"""Time scans that combine the witnesses, and the data behind the three figures."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .chsh import CLASSICAL_BOUND, correlation_matrix, s_max_closed_form, s_max_horodecki
from .model import ModelParams, ParameterError
from .pdm import spectrum_analytic, two_time_pdm
from .response import complex_heat_capacity, default_omega_grid


class ConfigurationError(ValueError):
    pass


def _grid(t_range, samples) -> np.ndarray:
    t_min, t_max = (float(v) for v in t_range)
    if not (math.isfinite(t_min) and math.isfinite(t_max)) or t_min < 0 or t_max <= t_min:
        raise ParameterError(f"invalid time range {t_range!r}")
    if samples < 2:
        raise ParameterError("need at least 2 samples")
    return np.linspace(t_min, t_max, int(samples))


def _windows(fn: Callable[[float], float], ts: np.ndarray, xtol: float = 1e-12) -> list[tuple[float, float]]:
    """Intervals inside [ts[0], ts[-1]] where fn > 0, with interior crossings refined by Brent's method."""
    vals = np.array([fn(t) for t in ts])
    positive = vals > 0
    out, start = [], ts[0] if positive[0] else None
    for k in range(1, len(ts)):
        if positive[k] == positive[k - 1]:
            continue
        crossing = brentq(fn, ts[k - 1], ts[k], xtol=xtol, rtol=4 * np.finfo(float).eps)
        if positive[k]:
            start = crossing
        else:
            out.append((start, crossing))
            start = None
    if start is not None:
        out.append((start, float(ts[-1])))
    return [(float(a), float(b)) for a, b in out]


def negativity_window(params: ModelParams, t_range=(0.0, 10.0), samples: int = 1001, floor: float = 0.0):
    """Intervals where the smallest PDM eigenvalue is below -floor."""
    return _windows(lambda t: -spectrum_analytic(params, t).min_eigenvalue - floor, _grid(t_range, samples))


def _chsh_margin(params: ModelParams, t: float, bound: float = CLASSICAL_BOUND) -> float:
    value = s_max_closed_form(params, t).value
    return -math.inf if math.isnan(value) else value - bound


def chsh_window(params: ModelParams, t_range=(0.0, 10.0), samples: int = 1001):
    """Intervals where the closed-form S_max exceeds the classical bound."""
    return _windows(lambda t: _chsh_margin(params, t), _grid(t_range, samples))


# ---------- C'' violation region ----------
@dataclass(frozen=True)
class RegionMapping:
    """How a time sample is turned into an interval of C'' values.

    strategy "combined": verdict = (negativity > negativity_floor) or (S_max_closed > bound),
    "negativity" / "chsh": one witness only. The interval is the range of
    C''(omega) * exp(-gamma1 t) over the frequency grid, the weight carried by
    the decaying part of the z-z PDM entry.
    """

    strategy: str = "combined"
    negativity_floor: float = 1e-4
    bound: float = CLASSICAL_BOUND
    omega_points: int = 200
    omega_lo: float = 1e-2
    omega_hi: float = 1e2

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ConfigurationError(f"unknown mapping strategy {self.strategy!r}; choose from {sorted(STRATEGIES)}")
        if self.negativity_floor < 0:
            raise ConfigurationError("negativity_floor must be >= 0")
        if self.omega_points < 1 or not 0 < self.omega_lo < self.omega_hi:
            raise ConfigurationError("invalid omega grid specification")

    def omega_grid(self, params: ModelParams) -> np.ndarray:
        return default_omega_grid(params, self.omega_points, self.omega_lo, self.omega_hi)

    def margin(self, params: ModelParams, t: float) -> float:
        """Positive exactly when the verdict holds at t."""
        return STRATEGIES[self.strategy](self, params, t)


def _negativity_margin(mapping, params, t):
    # signed: -lambda_min once the spectrum is positive, so root finding sees a real sign change
    spec = spectrum_analytic(params, t)
    excess = spec.negativity if spec.negativity > 0 else -spec.min_eigenvalue
    return excess - mapping.negativity_floor


STRATEGIES = {
    "combined": lambda m, p, t: max(_negativity_margin(m, p, t), _chsh_margin(p, t, m.bound)),
    "negativity": _negativity_margin,
    "chsh": lambda m, p, t: _chsh_margin(p, t, m.bound),
}

DEFAULT_MAPPING = RegionMapping()


def cpp_violation_region(params: ModelParams, t: float, mapping: RegionMapping | None, omega_grid=None):
    """(lo, hi) range of weighted C'' values when the verdict holds at t, else None."""
    if mapping is None:
        raise ConfigurationError("no region mapping configured")
    omegas = mapping.omega_grid(params) if omega_grid is None else np.asarray(omega_grid, dtype=float)
    if omegas.size == 0:
        raise ParameterError("omega grid is empty")
    if mapping.margin(params, t) <= 0:
        return None
    weight = math.exp(-params.gamma1 * t)
    values = np.array([complex_heat_capacity(params, w).c_imag for w in omegas]) * weight
    return float(values.min()), float(values.max())


def region_extinction(params: ModelParams, mapping: RegionMapping = DEFAULT_MAPPING, t_range=(0.0, 10.0), samples=1001):
    """End of the first verdict window, i.e. the time after which the region first goes empty."""
    windows = _windows(lambda t: mapping.margin(params, t), _grid(t_range, samples))
    if not windows:
        return None
    return windows[0][1]


# ---------- figure data ----------
@dataclass
class ScanResult:
    which: int
    t: np.ndarray
    eigenvalues: np.ndarray | None = None
    negativity: np.ndarray | None = None
    s_max_closed: np.ndarray | None = None
    s_max_horodecki: np.ndarray | None = None
    cpp_bounds: list = field(default_factory=list)

    def __post_init__(self):
        if np.any(np.diff(self.t) <= 0):
            raise ParameterError("scan times must be strictly increasing")

    def rows(self):
        if self.which == 1:
            for k, t in enumerate(self.t):
                yield (float(t), *map(float, self.eigenvalues[k]), float(self.negativity[k]))
        elif self.which == 2:
            for k, t in enumerate(self.t):
                yield (float(t), float(self.s_max_closed[k]), float(self.s_max_horodecki[k]))
        else:
            for t, bounds in zip(self.t, self.cpp_bounds):
                lo, hi = (math.nan, math.nan) if bounds is None else bounds
                yield (float(t), lo, hi, int(bounds is not None))

    @property
    def columns(self):
        return {
            1: ("t", "l1", "l2", "l3", "l4", "negativity"),
            2: ("t", "smax_closed", "smax_horodecki"),
            3: ("t", "cpp_lo", "cpp_hi", "verdict"),
        }[self.which]


def figure_data(
    params: ModelParams, which: int, t_range=(0.0, 10.0), samples: int = 501, mapping: RegionMapping = DEFAULT_MAPPING
) -> ScanResult:
    if which not in (1, 2, 3):
        raise ParameterError(f"figure must be 1, 2 or 3, got {which!r}")
    ts = _grid(t_range, samples)
    if which == 1:
        spectra = [spectrum_analytic(params, float(t)) for t in ts]
        return ScanResult(
            1, ts, np.array([s.eigenvalues for s in spectra]), np.array([s.negativity for s in spectra])
        )
    if which == 2:
        closed = np.array([s_max_closed_form(params, float(t)).value for t in ts])
        hor = np.array([s_max_horodecki(correlation_matrix(two_time_pdm(params, float(t)))) for t in ts])
        return ScanResult(2, ts, s_max_closed=closed, s_max_horodecki=hor)
    omegas = mapping.omega_grid(params)
    return ScanResult(3, ts, cpp_bounds=[cpp_violation_region(params, float(t), mapping, omegas) for t in ts])
