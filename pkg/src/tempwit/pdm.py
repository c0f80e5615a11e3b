"""Pseudo-density matrices for one qubit probed at several times.

Two storage layouts are used for a 4x4 two-time object:

``"operator"``
    the matrix of R in the computational product basis |ab>, first tensor
    factor = earlier event. This is what the general Pauli-sum builder returns.
``"pauli"``
    a coefficient table indexed by Pauli labels (0, x, y, z) x (0, x, y, z):
    entry [mu, nu] is the weight of sigma_mu (x) sigma_nu, and the table is
    normalised to unit trace. The closed-form thermal-qubit matrix is of this
    kind; its normalisation N(t) is a quarter of the raw table trace.

Spectra are always eigenvalues of the stored matrix. ``PDM2.operator()`` gives
the product-basis operator in either case.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Sequence

import numpy as np

from .lindblad import steady_state_matrix, symmetrized_correlator
from .model import (
    PAULI,
    ContractViolation,
    DegenerateNormalization,
    ModelParams,
    ParameterError,
    gibbs_state,
    is_hermitian,
)

N_FLOOR = 1e-9

CorrelatorOracle = Callable[[tuple], float]


@dataclass(frozen=True)
class PDM2:
    matrix: np.ndarray
    t0: float = 0.0
    t1: float = 0.0
    params: ModelParams | None = None
    layout: str = "operator"
    raw_trace: complex | None = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ContractViolation(f"PDM2 must be 4x4, got {m.shape}")
        if self.layout not in ("operator", "pauli"):
            raise ContractViolation(f"unknown layout {self.layout!r}")
        if not is_hermitian(m, 1e-10):
            raise ContractViolation("PDM2 matrix is not Hermitian")
        if abs(np.trace(m) - 1) > 1e-10:
            raise ContractViolation(f"PDM2 trace is {np.trace(m)!r}, expected 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def operator(self) -> np.ndarray:
        if self.layout == "operator":
            return self.matrix
        return np.einsum("mn,mab,ncd->acbd", self.matrix, PAULI, PAULI).reshape(4, 4)

    def to_json(self) -> dict:
        return {
            "t0": self.t0,
            "t1": self.t1,
            "layout": self.layout,
            "params": None if self.params is None else self.params.as_dict(),
            "entries": [[float(v.real), float(v.imag)] for v in self.matrix.ravel()],
        }


@dataclass(frozen=True)
class PdmSpectrum:
    eigenvalues: np.ndarray  # descending
    negativity: float = field(init=False)

    def __post_init__(self):
        ev = np.sort(np.asarray(self.eigenvalues, dtype=float))[::-1]
        ev.setflags(write=False)
        object.__setattr__(self, "eigenvalues", ev)
        object.__setattr__(self, "negativity", float(np.sum(np.clip(-ev, 0.0, None))))

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[-1])


# ---------- general builder ----------
def build_pdm_general(oracle: CorrelatorOracle, n: int) -> np.ndarray:
    """R = 2^-n sum_{i_1..i_n} <{sigma_{i_j}}> (x)_j sigma_{i_j}, a 2^n x 2^n product-basis matrix."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ParameterError(f"event count must be a positive integer, got {n!r}")
    identity = oracle((0,) * n)
    if abs(identity - 1) > 1e-12:
        raise ContractViolation(f"oracle gives <identity> = {identity!r}, expected 1")
    dim = 2**n
    R = np.zeros((dim, dim), dtype=complex)
    for idx in itertools.product(range(4), repeat=n):
        value = oracle(idx)
        if isinstance(value, complex) and abs(value.imag) > 1e-12:
            raise ContractViolation(f"oracle returned complex value {value!r} for {idx}")
        value = float(np.real(value))
        if not math.isfinite(value) or abs(value) > 1 + 1e-12:
            raise ContractViolation(f"oracle value {value!r} for {idx} outside [-1, 1]")
        if value == 0.0:
            continue
        R += value * reduce(np.kron, (PAULI[i] for i in idx))
    return R / dim


def gibbs_oracle(params: ModelParams) -> CorrelatorOracle:
    rho = gibbs_state(params)

    def oracle(idx):
        (mu,) = idx
        return float(np.real(np.trace(rho @ PAULI[mu])))

    return oracle


def thermal_oracle(params: ModelParams, times: Sequence[float]) -> CorrelatorOracle:
    """Steady-state thermal qubit measured at one or two times.

    Two-time products are the symmetrized regression correlators
    1/2 <{sigma_a(t0), sigma_b(t1)}>; a single non-identity index is the
    steady-state marginal.
    """
    times = tuple(float(t) for t in times)
    if len(times) not in (1, 2):
        raise ParameterError("thermal_oracle supports one or two measurement times")
    if len(times) == 2 and times[1] < times[0]:
        raise ParameterError("measurement times must be ordered")
    rho = steady_state_matrix(params)
    marginal = [float(np.real(np.trace(rho @ P))) for P in PAULI]

    def oracle(idx):
        if len(idx) != len(times):
            raise ContractViolation("index tuple length does not match the number of events")
        if len(idx) == 1 or idx[1] == 0:
            return marginal[idx[0]]
        if idx[0] == 0:
            return marginal[idx[1]]
        return symmetrized_correlator(idx[1], idx[0], times[1] - times[0], params)

    return oracle


# ---------- closed-form thermal PDM ----------
def thermal_terms(params: ModelParams, t: float) -> tuple[float, float, float, float]:
    """(c, s, f, tanh) at elapsed time t."""
    if not math.isfinite(t) or t < 0:
        raise ParameterError(f"elapsed time must be finite and >= 0, got {t}")
    th = math.tanh(params.half_ratio)
    decay = math.exp(-params.gamma2 * t)
    c = decay * math.cos(params.omega0 * t)
    s = decay * math.sin(params.omega0 * t)
    f = th * th + (1 - th * th) * math.exp(-params.gamma1 * t)
    return c, s, f, th


def pdm_normalization(params: ModelParams, t: float) -> float:
    c, _, f, _ = thermal_terms(params, t)
    return 0.25 * (1 + 2 * c + f)


def _check_norm(N: float, t: float) -> None:
    if N <= N_FLOOR:
        raise DegenerateNormalization(f"N(t) = {N!r} <= {N_FLOOR} at t = {t}")


def thermal_table(params: ModelParams, t: float) -> np.ndarray:
    """Unnormalised two-time coefficient table (rows/cols 0, x, y, z)."""
    c, s, f, th = thermal_terms(params, t)
    return np.array(
        [
            [1, 0, 0, -th],
            [0, c, -1j * s, 0],
            [0, 1j * s, c, 0],
            [-th, 0, 0, f],
        ],
        dtype=complex,
    )


def two_time_pdm(params: ModelParams, t: float, t0: float = 0.0) -> PDM2:
    """Closed-form two-time matrix R = table / (4 N(t)) for events at t0 and t0 + t."""
    N = pdm_normalization(params, t)
    _check_norm(N, t)
    return PDM2(thermal_table(params, t) / (4 * N), t0, t0 + t, params, layout="pauli")


@dataclass(frozen=True)
class MarginalData:
    """Zeroth row/column of the coefficient table, which heat capacity does not supply."""

    identity: float = 1.0
    first: tuple = (0.0, 0.0, 0.0)  # <sigma_mu(t0)>, weight of sigma_mu (x) 1
    second: tuple = (0.0, 0.0, 0.0)  # <sigma_nu(t1)>, weight of 1 (x) sigma_nu

    @classmethod
    def thermal(cls, params: ModelParams) -> "MarginalData":
        z = params.z_eq
        return cls(1.0, (0.0, 0.0, z), (0.0, 0.0, z))


def thermal_coefficients(params: ModelParams, t: float) -> np.ndarray:
    """The x,y,z block of the thermal table, shaped as a response-tensor entry array."""
    return thermal_table(params, t)[1:, 1:]


def pdm_from_heat_capacity(tensor, zeroth: MarginalData) -> PDM2:
    """R = 1/4 sum C_{mu nu} sigma_mu (x) sigma_nu, stored as a unit-trace coefficient table."""
    entries = getattr(tensor, "entries", tensor)
    entries = np.asarray(entries, dtype=complex)
    if entries.shape != (3, 3) or not np.all(np.isfinite(entries)):
        raise ContractViolation("heat-capacity tensor must be a finite 3x3 array")
    table = np.zeros((4, 4), dtype=complex)
    table[0, 0] = zeroth.identity
    table[1:, 0] = zeroth.first
    table[0, 1:] = zeroth.second
    table[1:, 1:] = entries
    raw = np.trace(table)
    if abs(raw) <= N_FLOOR:
        raise DegenerateNormalization(f"coefficient table trace {raw!r} is degenerate")
    return PDM2(table / raw, layout="pauli", raw_trace=complex(raw))


# ---------- spectra ----------
def spectrum_analytic(params: ModelParams, t: float) -> PdmSpectrum:
    """lambda_{1,2} = (1 + Z +- sqrt((1 - Z)^2 + 4 tanh^2)) / 8N, lambda_{3,4} = (c +- s) / 4N."""
    c, s, Z, th = thermal_terms(params, t)
    N = 0.25 * (1 + 2 * c + Z)
    _check_norm(N, t)
    root = math.sqrt((1 - Z) ** 2 + 4 * th * th)
    lam = [(1 + Z + root) / (8 * N), (1 + Z - root) / (8 * N), (c + s) / (4 * N), (c - s) / (4 * N)]
    return PdmSpectrum(np.array(lam))


def min_eigenvalue_analytic(params: ModelParams, t: float) -> float:
    return spectrum_analytic(params, t).min_eigenvalue


def spectrum_numeric(pdm) -> PdmSpectrum:
    m = pdm.matrix if isinstance(pdm, PDM2) else np.asarray(pdm, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractViolation("spectrum_numeric needs a square matrix")
    if not is_hermitian(m, 1e-10):
        raise ContractViolation("matrix is not Hermitian within 1e-10")
    return PdmSpectrum(np.linalg.eigvalsh(0.5 * (m + m.conj().T)))
