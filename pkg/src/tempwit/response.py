"""Linear-response thermodynamics of the thermal qubit.

Two independent routes to a heat-capacity spectrum live here:

* the relaxation route: z obeys dz/dt = -Gamma (z - z_eq(T(t))), giving the
  Debye form C(omega) = C_eq Gamma / (Gamma - i omega);
* the Kubo route: Fourier integrals of steady-state commutator or correlation
  functions of the drive Hamiltonian H = (hbar/2) delta_omega . sigma.

The two are not interconverted. For a drive parallel to sigma_z the commutator
vanishes identically while the relaxation route does not.

Prefactors: ``kubo_spectrum`` carries 1/(2 hbar) over the full time axis,
``response_tensor`` carries 1/(kB T^2) over t >= 0 with (hbar omega/2)^2 from
the two Hamiltonian time derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .lindblad import propagator, reversed_correlator, steady_state, two_time_correlator
from .model import LEVI_CIVITA, AccuracyError, ModelParams, ParameterError, check_index

AXES = "xyz"


@dataclass(frozen=True)
class HeatCapacitySample:
    omega_mod: float
    c_real: float
    c_imag: float

    @property
    def value(self) -> complex:
        return complex(self.c_real, self.c_imag)

    columns = ("omega", "c_real", "c_imag")

    def row(self):
        return (self.omega_mod, self.c_real, self.c_imag)


def equilibrium_heat_capacity(params: ModelParams) -> float:
    """C_eq = (hbar omega0)^2 / (4 kB T^2) * sech^2(hbar omega0 / 2 kB T)."""
    x = params.half_ratio
    sech2 = 1.0 / math.cosh(x) ** 2 if x < 350 else 0.0
    return (params.hbar * params.omega0) ** 2 / (4 * params.kB * params.temperature**2) * sech2


def complex_heat_capacity(params: ModelParams, omega_mod: float) -> HeatCapacitySample:
    if not math.isfinite(omega_mod):
        raise ParameterError(f"omega_mod must be finite, got {omega_mod}")
    gamma = params.big_gamma
    c_eq = equilibrium_heat_capacity(params)
    if gamma == 0.0:
        # no relaxation channel: z never follows T, except exactly at omega = 0
        return HeatCapacitySample(float(omega_mod), c_eq if omega_mod == 0 else 0.0, 0.0)
    c = c_eq * gamma / complex(gamma, -omega_mod)
    return HeatCapacitySample(float(omega_mod), c.real, c.imag)


def heat_capacity_spectrum(params: ModelParams, omegas) -> list[HeatCapacitySample]:
    return [complex_heat_capacity(params, float(w)) for w in np.asarray(omegas, dtype=float)]


def default_omega_grid(params: ModelParams, points: int = 200, lo: float = 1e-2, hi: float = 1e2):
    """Log-spaced modulation frequencies spanning [lo, hi] * Gamma."""
    gamma = params.big_gamma if params.big_gamma > 0 else params.omega0
    return gamma * np.logspace(math.log10(lo), math.log10(hi), points)


# ---------- Kubo route ----------
def _drive(drive) -> np.ndarray:
    d = np.asarray(drive, dtype=float)
    if d.shape != (3,):
        raise ParameterError("drive must be a 3-vector delta_omega")
    if not np.all(np.isfinite(d)):
        raise ParameterError("drive contains non-finite components")
    return d


def default_t_max(params: ModelParams) -> float:
    slowest = min(params.gamma1, params.gamma2)
    if slowest <= 0:
        raise AccuracyError("no decay channel: correlators never decay, Fourier integrals diverge")
    return 12.0 / slowest


def commutator_correlator(params: ModelParams, drive, t: float) -> complex:
    """<[H(t), H(0)]> for H = (hbar/2) drive . sigma in the steady state.

    Uses [a.sigma, b.sigma] = 2i (a x b).sigma with the Heisenberg-evolved
    coefficients a = h(t): <[H(t), H]> = 2i sum eps_{mu nu lam} h_mu(t) h_nu <sigma_lam>.
    Negative t follows from stationarity, <[H(-t), H]> = -<[H(t), H]>.
    """
    h = 0.5 * params.hbar * _drive(drive)
    if not math.isfinite(t):
        raise ParameterError("t must be finite")
    if t < 0:
        return -commutator_correlator(params, drive, -t)
    _, h_t = propagator(params, t).adjoint(0.0, h)
    m = steady_state(params).as_array()
    return 2j * float(np.einsum("abc,a,b,c->", LEVI_CIVITA, h_t, h, m))


def kubo_susceptibility(params: ModelParams, drive, t: float) -> float:
    """chi(t) = (i/hbar) Theta(t) <[H(t), H(0)]>; real because the commutator is anti-Hermitian."""
    if not math.isfinite(t):
        raise ParameterError("t must be finite")
    if t < 0:
        return 0.0
    return float((1j / params.hbar * commutator_correlator(params, drive, t)).real)


@dataclass(frozen=True)
class KuboSpectrum:
    omega_mod: float
    value: complex
    tail_bound: float
    quad_error: float
    t_max: float

    @property
    def error(self) -> float:
        return self.tail_bound + self.quad_error


def kubo_spectrum(
    params: ModelParams,
    drive,
    omega_mod: float,
    t_max: float | None = None,
    tol: float = 1e-6,
    rtol: float = 1e-8,
) -> KuboSpectrum:
    """(1/2hbar) * integral over t in [-t_max, t_max] of <[H(t), H(0)]> exp(i omega t).

    The commutator correlator is odd in t, so the cosine part cancels and the
    result is (i/hbar) * int_0^t_max K(t) sin(omega t) dt, evaluated with an
    adaptive sine-weighted rule. The commutator only involves transverse
    Heisenberg coefficients, hence decays like exp(-gamma2 t) with amplitude at
    most 2 |<sigma>| |h_perp|^2; that bounds the truncated tail.
    """
    d = _drive(drive)
    if not math.isfinite(omega_mod):
        raise ParameterError("omega_mod must be finite")
    t_max = default_t_max(params) if t_max is None else float(t_max)
    h = 0.5 * params.hbar * d
    amplitude = 2.0 * abs(params.z_eq) * float(h[0] ** 2 + h[1] ** 2)
    if amplitude == 0.0 or omega_mod == 0.0:
        return KuboSpectrum(float(omega_mod), 0j, 0.0, 0.0, t_max)
    if params.gamma2 <= 0:
        raise AccuracyError("transverse coherence does not decay; commutator spectrum is not integrable")
    tail = amplitude * math.exp(-params.gamma2 * t_max) / (params.hbar * params.gamma2)

    def k(t):
        return commutator_correlator(params, d, t).imag

    integral, abserr = quad(k, 0.0, t_max, weight="sin", wvar=omega_mod, epsabs=1e-14, epsrel=rtol, limit=500)
    value = (1j / params.hbar) * (1j * integral)
    quad_error = abserr / params.hbar
    if tail > tol:
        raise AccuracyError(f"tail bound {tail:.3e} at t_max={t_max} exceeds tolerance {tol:.1e}")
    return KuboSpectrum(float(omega_mod), complex(value), tail, quad_error, t_max)


# ---------- correlator transforms and the C_{mu nu} tensor ----------
def connected_correlator(mu: int, nu: int, t: float, params: ModelParams, ordering: str = "forward") -> complex:
    """<sigma_mu(t) sigma_nu(0)> - <sigma_mu><sigma_nu>; ordering='reverse' gives <sigma_nu(0) sigma_mu(t)> - ..."""
    mu, nu = check_index(mu), check_index(nu)
    if ordering == "forward":
        raw = two_time_correlator(mu, nu, t, params)
    elif ordering == "reverse":
        raw = reversed_correlator(mu, nu, t, params)
    else:
        raise ParameterError(f"ordering must be 'forward' or 'reverse', got {ordering!r}")
    m = np.concatenate([[1.0], steady_state(params).as_array()])
    return raw - m[mu] * m[nu]


def _decay_bound(mu: int, nu: int, params: ModelParams) -> tuple[float, float]:
    """(amplitude, rate) with |connected correlator| <= amplitude * exp(-rate t).

    The generator is block diagonal: x,y decay at gamma2, z at gamma1, and the
    steady state has no transverse part, so only xy-xy and z-z blocks survive.
    """
    z = params.z_eq
    if mu in (1, 2) and nu in (1, 2):
        return math.sqrt(1 + z * z), params.gamma2
    if mu == 3 and nu == 3:
        return 1 - z * z, params.gamma1
    return 0.0, math.inf


def one_sided_transform(
    mu: int,
    nu: int,
    omega: float,
    params: ModelParams,
    t_max: float | None = None,
    ordering: str = "forward",
    rtol: float = 1e-8,
) -> tuple[complex, float]:
    """int_0^t_max G_conn(t) exp(i omega t) dt, returned with an error estimate (quadrature + tail)."""
    t_max = default_t_max(params) if t_max is None else float(t_max)
    amplitude, rate = _decay_bound(mu, nu, params)
    if amplitude == 0.0:
        return 0j, 0.0
    if rate <= 0:
        raise AccuracyError("correlator does not decay")
    tail = amplitude * math.exp(-rate * t_max) / rate

    def re(t):
        return connected_correlator(mu, nu, t, params, ordering).real

    def im(t):
        return connected_correlator(mu, nu, t, params, ordering).imag

    opts = dict(epsabs=1e-14, epsrel=rtol, limit=500)
    if omega == 0.0:
        a, ea = quad(re, 0.0, t_max, **opts)
        b, eb = quad(im, 0.0, t_max, **opts)
        return complex(a, b), tail + ea + eb
    rc, e1 = quad(re, 0.0, t_max, weight="cos", wvar=omega, **opts)
    rs, e2 = quad(re, 0.0, t_max, weight="sin", wvar=omega, **opts)
    ic, e3 = quad(im, 0.0, t_max, weight="cos", wvar=omega, **opts)
    is_, e4 = quad(im, 0.0, t_max, weight="sin", wvar=omega, **opts)
    return complex(rc - is_, rs + ic), tail + e1 + e2 + e3 + e4


@dataclass(frozen=True)
class ResponseTensorSample:
    omega_mod: float
    entries: np.ndarray  # 3x3 complex, index order x, y, z
    drive: np.ndarray
    error: float = 0.0
    ordering: str = "forward"

    columns = ("row", "col", "re", "im")

    def rows(self):
        for a in range(3):
            for b in range(3):
                v = self.entries[a, b]
                yield (AXES[a], AXES[b], float(v.real), float(v.imag))


def response_tensor(
    params: ModelParams,
    drive,
    omega_mod: float,
    t_max: float | None = None,
    tol: float = 1e-5,
    ordering: str = "forward",
) -> ResponseTensorSample:
    """C_{mu nu}(omega) = 1/(kB T^2) int_0^inf <Hdot_mu(t) Hdot_nu(0)> exp(i omega t) dt.

    Hdot_mu = -(i hbar omega/2) delta_omega_mu sigma_mu; the product of the two
    drive amplitudes is taken as (hbar omega/2)^2 delta_omega_mu delta_omega_nu,
    and the correlator is the connected one so that the z-z integral converges.
    """
    d = _drive(drive)
    if not math.isfinite(omega_mod):
        raise ParameterError("omega_mod must be finite")
    entries = np.zeros((3, 3), dtype=complex)
    error = 0.0
    scale = (params.hbar * omega_mod / 2) ** 2 / (params.kB * params.temperature**2)
    for a in range(3):
        for b in range(3):
            weight = scale * d[a] * d[b]
            if weight == 0.0:
                continue
            F, err = one_sided_transform(a + 1, b + 1, omega_mod, params, t_max, ordering)
            entries[a, b] = weight * F
            error += abs(weight) * err
    if error > tol:
        raise AccuracyError(f"tensor error estimate {error:.3e} exceeds tolerance {tol:.1e}")
    entries.setflags(write=False)
    return ResponseTensorSample(float(omega_mod), entries, d.copy(), error, ordering)


def kubo_spectrum_from_correlators(params: ModelParams, drive, omega_mod: float, t_max: float | None = None) -> complex:
    """Commutator spectrum rebuilt from forward one-sided correlator transforms.

    K(t) = sum h_mu h_nu (G - G*)_{mu nu}(t), and for t >= 0
    int_0 Im G sin(omega t) = -Re[F(omega) - conj F(-omega)]/2, so
    value = (1/hbar) sum h_mu h_nu Re[F_{mu nu}(omega) - conj F_{mu nu}(-omega)].
    """
    h = 0.5 * params.hbar * _drive(drive)
    total = 0.0
    for a in range(3):
        for b in range(3):
            if h[a] * h[b] == 0.0:
                continue
            Fp, _ = one_sided_transform(a + 1, b + 1, omega_mod, params, t_max)
            Fm, _ = one_sided_transform(a + 1, b + 1, -omega_mod, params, t_max)
            total += h[a] * h[b] * (Fp - np.conj(Fm)).real
    return complex(total / params.hbar)
