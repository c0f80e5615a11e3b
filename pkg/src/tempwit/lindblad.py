"""Bloch-space dynamics of the thermal qubit and two-time correlators.

Generator (rates from ModelParams):

    dx/dt = -gamma2 x - omega0 y
    dy/dt =  omega0 x - gamma2 y
    dz/dt = -gamma1 (z - z_eq)

i.e. x + iy rotates as exp((i omega0 - gamma2) t). This is the sign produced by
-i[H, rho] with H = (hbar omega0/2) sigma_z, and with it the regression
correlators come out as Re<sx(t)sy(0)> = -s, Re<sy(t)sx(0)> = +s, matching the
-i s / +i s placement in the closed-form two-time table (row index = later time).

Two independent routes are kept on purpose: the closed-form affine propagator
on Bloch vectors, and a 4x4 Liouvillian superoperator built from the jump
operators sqrt(gamma_-) sigma_-, sqrt(gamma_+) sigma_+, sqrt(gamma_phi/2) sigma_z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .model import (
    PAULI,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SZ,
    BlochState,
    ModelParams,
    ParameterError,
    check_index,
    dag,
    derived_rates,
    hamiltonian,
)


@dataclass(frozen=True)
class AffinePropagator:
    """r(t0 + duration) = linear @ r(t0) + offset, for Bloch vectors."""

    linear: np.ndarray
    offset: np.ndarray
    duration: float

    def apply(self, r) -> np.ndarray:
        return self.linear @ np.asarray(r) + self.offset

    def then(self, later: "AffinePropagator") -> "AffinePropagator":
        """Run self first, then ``later``."""
        return AffinePropagator(
            later.linear @ self.linear,
            later.linear @ self.offset + later.offset,
            self.duration + later.duration,
        )

    def adjoint(self, a0, a) -> tuple:
        """Heisenberg picture: A = a0*1 + a.sigma  ->  (a0 + a.offset, linear^T a)."""
        a = np.asarray(a)
        return a0 + a @ self.offset, self.linear.T @ a


def _check_time(t, name="t"):
    if not math.isfinite(t):
        raise ParameterError(f"{name} must be finite, got {t}")
    if t < 0:
        raise ParameterError(f"{name} must be >= 0, got {t}")


def bloch_generator(params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    """(A, b) with dr/dt = A r + b."""
    g1, g2, w = params.gamma1, params.gamma2, params.omega0
    A = np.array([[-g2, -w, 0.0], [w, -g2, 0.0], [0.0, 0.0, -g1]])
    b = np.array([0.0, 0.0, g1 * params.z_eq])
    return A, b


def propagator(params: ModelParams, t: float) -> AffinePropagator:
    _check_time(t)
    decay_t = math.exp(-params.gamma2 * t)
    decay_z = math.exp(-params.gamma1 * t)
    c, s = math.cos(params.omega0 * t), math.sin(params.omega0 * t)
    linear = np.array(
        [[decay_t * c, -decay_t * s, 0.0], [decay_t * s, decay_t * c, 0.0], [0.0, 0.0, decay_z]]
    )
    offset = np.array([0.0, 0.0, params.z_eq * (1.0 - decay_z)])
    return AffinePropagator(linear, offset, float(t))


def steady_state(params: ModelParams) -> BlochState:
    return BlochState(0.0, 0.0, params.z_eq)


def steady_state_matrix(params: ModelParams) -> np.ndarray:
    return steady_state(params).to_matrix()


def evolve(initial: BlochState, params: ModelParams, t: float) -> BlochState:
    return BlochState.from_array(propagator(params, t).apply(initial.as_array()))


# ---------- numerical oracle ----------
@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (n, 3)

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise ParameterError("times and states differ in length")
        if np.any(np.diff(self.times) <= 0):
            raise ParameterError("trajectory times must be strictly increasing")

    def __len__(self):
        return len(self.times)

    @property
    def final(self) -> BlochState:
        return BlochState.from_array(self.states[-1])

    def rows(self):
        for t, (x, y, z) in zip(self.times, self.states):
            yield (float(t), float(x), float(y), float(z))

    columns = ("time", "x", "y", "z")


def default_step(params: ModelParams) -> float:
    return min(1e-3, 0.01 / max(params.omega0, params.gamma1, params.gamma2))


def rk4_affine(A, b, r0, t: float, step: float, record_every: int = 1):
    """Classical RK4 for dr/dt = A r + b on [0, t]; the last step is shortened to land on t."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    if not (math.isfinite(step) and step > 0):
        raise ParameterError(f"step must be a positive finite number, got {step}")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
        raise ParameterError("generator contains non-finite entries")
    _check_time(t)
    n_full = int(math.floor(t / step + 1e-9))
    remainder = t - n_full * step
    steps = [step] * n_full
    if remainder > 1e-12 * max(1.0, t):
        steps.append(remainder)

    r = np.array(r0, dtype=float)
    times, states = [0.0], [r.copy()]
    now = 0.0

    def f(v):
        return A @ v + b

    for k, h in enumerate(steps, start=1):
        k1 = f(r)
        k2 = f(r + 0.5 * h * k1)
        k3 = f(r + 0.5 * h * k2)
        k4 = f(r + h * k3)
        r = r + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        now = t if k == len(steps) else now + h
        if k % record_every == 0 or k == len(steps):
            times.append(now)
            states.append(r.copy())
    return np.array(times), np.array(states)


def evolve_numeric(
    initial: BlochState, params: ModelParams, t: float, step: float | None = None, record_every: int = 1
) -> Trajectory:
    A, b = bloch_generator(params)
    step = default_step(params) if step is None else step
    times, states = rk4_affine(A, b, initial.as_array(), t, step, record_every)
    return Trajectory(times, states)


# ---------- regression correlators ----------
def _pauli_coefficients(op: np.ndarray) -> tuple[complex, np.ndarray]:
    """op = (alpha*1 + a.sigma)/2, returns (alpha, a)."""
    alpha = np.trace(op)
    a = np.array([np.trace(op @ PAULI[k]) for k in (1, 2, 3)])
    return alpha, a


def _propagate_and_read(op: np.ndarray, i: int, tau: float, params: ModelParams) -> complex:
    alpha, a = _pauli_coefficients(op)
    prop = propagator(params, tau)
    a_t = prop.linear @ a + alpha * prop.offset
    return complex(alpha) if i == 0 else complex(a_t[i - 1])


def two_time_correlator(i: int, j: int, tau: float, params: ModelParams) -> complex:
    """<sigma_i(t0 + tau) sigma_j(t0)> in the steady state: Tr[sigma_i Lambda_tau(sigma_j rho_ss)]."""
    i, j = check_index(i), check_index(j)
    _check_time(tau, "tau")
    rho = steady_state_matrix(params)
    return _propagate_and_read(PAULI[j] @ rho, i, tau, params)


def reversed_correlator(i: int, j: int, tau: float, params: ModelParams) -> complex:
    """<sigma_j(t0) sigma_i(t0 + tau)> = Tr[sigma_i Lambda_tau(rho_ss sigma_j)]."""
    i, j = check_index(i), check_index(j)
    _check_time(tau, "tau")
    rho = steady_state_matrix(params)
    return _propagate_and_read(rho @ PAULI[j], i, tau, params)


def symmetrized_correlator(i: int, j: int, tau: float, params: ModelParams) -> float:
    """1/2 <{sigma_i(t0 + tau), sigma_j(t0)}>, propagated from the anticommutator {sigma_j, rho}/2."""
    i, j = check_index(i), check_index(j)
    _check_time(tau, "tau")
    rho = steady_state_matrix(params)
    op = 0.5 * (PAULI[j] @ rho + rho @ PAULI[j])
    value = _propagate_and_read(op, i, tau, params)
    return float(value.real)


# ---------- superoperator route ----------
def jump_operators(params: ModelParams) -> list[np.ndarray]:
    rates = derived_rates(params)
    return [
        math.sqrt(rates.gamma_minus) * SIGMA_MINUS,
        math.sqrt(rates.gamma_plus) * SIGMA_PLUS,
        math.sqrt(params.gamma_phi / 2) * SZ,
    ]


def liouvillian(params: ModelParams, H: np.ndarray | None = None) -> np.ndarray:
    """4x4 generator acting on column-stacked vec(rho)."""
    H = hamiltonian(params) if H is None else H
    eye = np.eye(2)
    L = -1j / params.hbar * (np.kron(eye, H) - np.kron(H.T, eye))
    for Lk in jump_operators(params):
        LdL = dag(Lk) @ Lk
        L = L + np.kron(Lk.conj(), Lk) - 0.5 * np.kron(eye, LdL) - 0.5 * np.kron(LdL.T, eye)
    return L


def propagate_operator(op: np.ndarray, params: ModelParams, tau: float, H: np.ndarray | None = None):
    vec = np.asarray(op, dtype=complex).reshape(-1, order="F")
    out = expm(liouvillian(params, H) * tau) @ vec
    return out.reshape((2, 2), order="F")


def regression_matrix(A: np.ndarray, B: np.ndarray, params: ModelParams, tau: float, rho=None) -> complex:
    """<A(tau) B(0)> = Tr[A exp(L tau)(B rho)] via the superoperator exponential."""
    rho = steady_state_matrix(params) if rho is None else rho
    return complex(np.trace(A @ propagate_operator(B @ rho, params, tau)))


# ---------- rotated frame ----------
def _unit(n) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    if n.shape != (3,) or not np.all(np.isfinite(n)):
        raise ParameterError("axis must be a finite 3-vector")
    if abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise ParameterError(f"axis must be a unit vector (|n| = {np.linalg.norm(n)!r})")
    return n


def rotation_unitary(n) -> np.ndarray:
    """U with U sigma_z U^dagger = n.sigma."""
    n = _unit(n)
    z = np.array([0.0, 0.0, 1.0])
    axis = np.cross(z, n)
    sin_a = np.linalg.norm(axis)
    cos_a = float(np.clip(n @ z, -1.0, 1.0))
    if sin_a < 1e-15:
        return np.eye(2, dtype=complex) if cos_a > 0 else -1j * PAULI[1]
    axis = axis / sin_a
    angle = math.atan2(sin_a, cos_a)
    generator = np.einsum("i,ijk->jk", axis, PAULI[1:])
    return math.cos(angle / 2) * np.eye(2) - 1j * math.sin(angle / 2) * generator


def axis_hamiltonian(params: ModelParams, n) -> np.ndarray:
    """H = (hbar omega0/2) n.sigma."""
    n = _unit(n)
    return 0.5 * params.hbar * params.omega0 * np.einsum("i,ijk->jk", n, PAULI[1:])


def to_rotated_frame(op: np.ndarray, n) -> np.ndarray:
    U = rotation_unitary(n)
    return dag(U) @ op @ U


def from_rotated_frame(op: np.ndarray, n) -> np.ndarray:
    U = rotation_unitary(n)
    return U @ op @ dag(U)


def evolve_along_axis(rho: np.ndarray, params: ModelParams, n, t: float) -> np.ndarray:
    """Evolve a lab-frame state for H = (hbar omega0/2) n.sigma, with jumps in the H eigenbasis."""
    rotated = BlochState.from_matrix(to_rotated_frame(rho, n))
    return from_rotated_frame(evolve(rotated, params, t).to_matrix(), n)
