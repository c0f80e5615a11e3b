"""Analytic-versus-numeric oracle comparisons at given parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import chsh, lindblad, pdm, response, witness
from .model import PAULI, BlochState, ModelParams, gibbs_state, mean_energy


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    tolerance: float
    passed: bool | None  # None: informational, reported but not judged


def _abs(name, measured, expected, tol):
    err = abs(measured - expected)
    return Check(name, err, tol, err <= tol)


def kubo_lorentzian(params: ModelParams, amplitude: float, omega: float) -> float:
    """Closed-form commutator spectrum for a drive amplitude along x."""
    h = params.hbar * amplitude / 2
    g, w0 = params.gamma2, params.omega0
    lor = 0.5 * (g / (g * g + (w0 - omega) ** 2) - g / (g * g + (w0 + omega) ** 2))
    return -2 * params.z_eq * h * h / params.hbar * lor


def check_tsirelson_closed(p):
    return _abs("closed-form S_max(0) = 2 sqrt 2", chsh.s_max_closed_form(p, 0.0).value, chsh.TSIRELSON_BOUND, 1e-9)


def check_tsirelson_horodecki(p):
    T = chsh.correlation_matrix(pdm.two_time_pdm(p, 0.0))
    return _abs("Horodecki S_max(0) = 2 sqrt 2", chsh.s_max_horodecki(T), chsh.TSIRELSON_BOUND, 1e-9)


def check_negativity_onset(p):
    windows = witness.negativity_window(p, (0.0, 10.0), 1001)
    onset = windows[0][0] if windows else math.nan
    return _abs("negativity onset = pi/(4 omega0)", onset, math.pi / (4 * p.omega0), 1e-6)


def check_chsh_crossing(p):
    windows = witness.chsh_window(p, (0.0, 10.0), 1001)
    end = windows[0][1] if windows else math.nan
    return Check("closed-form S_max crosses 2 in [2.2, 2.6]", end, 0.0, 2.2 <= end <= 2.6)


def check_eigenvalues(p):
    worst = 0.0
    for t in np.linspace(0.0, 10.0, 200):
        a = pdm.spectrum_analytic(p, t).eigenvalues
        n = pdm.spectrum_numeric(pdm.two_time_pdm(p, t)).eigenvalues
        worst = max(worst, float(np.max(np.abs(a - n))), abs(float(a.sum()) - 1))
    return Check("analytic vs numeric PDM eigenvalues", worst, 1e-10, worst <= 1e-10)


def check_heat_capacity_peak(p):
    c_eq = response.equilibrium_heat_capacity(p)
    return _abs("C''(Gamma) = C_eq/2", response.complex_heat_capacity(p, p.big_gamma).c_imag, c_eq / 2, 1e-9)


def check_debye_ratio(p):
    worst = 0.0
    for w in response.default_omega_grid(p):
        s = response.complex_heat_capacity(p, w)
        worst = max(worst, abs(s.c_imag / s.c_real - w / p.big_gamma))
    return Check("C''/C' = omega/Gamma", worst, 1e-12, worst <= 1e-12)


def check_equilibrium_fd(p):
    h = 1e-5
    fd = (mean_energy(p, p.temperature + h) - mean_energy(p, p.temperature - h)) / (2 * h)
    c_eq = response.equilibrium_heat_capacity(p)
    rel = abs(fd - c_eq) / abs(c_eq)
    return Check("C_eq vs finite-difference d<H>/dT (rel)", rel, 1e-6, rel <= 1e-6)


def check_regression(p):
    worst = 0.0
    for tau in (0.0, 0.5, 1.0, 2.0, 5.0):
        for i in range(4):
            for j in range(4):
                a = lindblad.two_time_correlator(i, j, tau, p)
                b = lindblad.regression_matrix(PAULI[i], PAULI[j], p, tau)
                worst = max(worst, abs(a - b))
    return Check("regression correlators vs Liouvillian exponential", worst, 1e-9, worst <= 1e-9)


def check_rk4(p):
    start = BlochState(0.3, -0.4, 0.8)
    exact = lindblad.evolve(start, p, 5.0).as_array()
    numeric = lindblad.evolve_numeric(start, p, 5.0, step=1e-3, record_every=10**9).final.as_array()
    err = float(np.max(np.abs(exact - numeric)))
    return Check("closed-form evolve vs RK4 at t=5", err, 1e-8, err <= 1e-8)


def check_kubo(p):
    res = response.kubo_spectrum(p, (1.0, 0.0, 0.0), p.omega0)
    err = abs(res.value.real - kubo_lorentzian(p, 1.0, p.omega0))
    # the truncated integral may differ from the infinite one by at most its own error estimate
    return Check("Kubo spectrum vs Lorentzian (within tail+quad estimate)", err, res.error, err <= res.error < 1e-6)


def check_gibbs_pdm(p):
    err = float(np.max(np.abs(pdm.build_pdm_general(pdm.gibbs_oracle(p), 1) - gibbs_state(p))))
    return Check("single-event Pauli sum = Gibbs state", err, 1e-12, err <= 1e-12)


# informational: pairs of routes that are not expected to agree
def info_closed_vs_horodecki(p):
    row = chsh.closed_vs_horodecki(p, [1.0])[0]
    return Check("info: closed-form minus Horodecki S_max at t=1", row.difference, math.nan, None)


def info_general_vs_closed(p):
    general = pdm.build_pdm_general(pdm.thermal_oracle(p, (0.0, 1.0)), 2)
    closed = pdm.two_time_pdm(p, 1.0).operator()
    return Check("info: Pauli-sum vs closed-form two-time operator at t=1 (max dev)",
                 float(np.max(np.abs(general - closed))), math.nan, None)


def info_cpp_routes(p):
    kubo = response.kubo_spectrum(p, (0.0, 0.0, 1.0), p.big_gamma).value.real
    relax = response.complex_heat_capacity(p, p.big_gamma).c_imag
    return Check("info: C'' relaxation route minus sigma_z commutator route at omega=Gamma",
                 relax - kubo, math.nan, None)


def info_optimizer(p):
    R = pdm.two_time_pdm(p, 1.0)
    _, best = chsh.optimize_directions(R)
    return Check("info: optimiser minus Horodecki S_max at t=1", best - chsh.s_max_horodecki(R), math.nan, None)


CHECKS: list[Callable[[ModelParams], Check]] = [
    check_tsirelson_closed,
    check_tsirelson_horodecki,
    check_negativity_onset,
    check_chsh_crossing,
    check_eigenvalues,
    check_heat_capacity_peak,
    check_debye_ratio,
    check_equilibrium_fd,
    check_regression,
    check_rk4,
    check_kubo,
    check_gibbs_pdm,
    info_closed_vs_horodecki,
    info_general_vs_closed,
    info_cpp_routes,
    info_optimizer,
]


def run_checks(params: ModelParams) -> list[Check]:
    return [check(params) for check in CHECKS]


def format_table(checks: list[Check]) -> str:
    lines = []
    for c in checks:
        status = "INFO" if c.passed is None else ("PASS" if c.passed else "FAIL")
        tol = "" if math.isnan(c.tolerance) else f"  tol={c.tolerance:.0e}"
        lines.append(f"[{status}] {c.name}: {c.measured:.6g}{tol}")
    return "\n".join(lines)
