"""Thermal-qubit parameters, Pauli algebra and small complex-matrix helpers.

Everything downstream works in the computational basis |0>, |1> with
sigma_z |0> = +|0>. The Hamiltonian is H = (hbar*omega0/2) sigma_z, so |1> is
the ground state and the equilibrium Bloch vector points along -z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


class ParameterError(ValueError):
    """Input outside the physical/mathematical domain of an operation."""


class AccuracyError(RuntimeError):
    """A numerical result cannot be certified to the requested tolerance."""


class ContractViolation(ValueError):
    """An object handed to an operation breaks that operation's contract."""


class DegenerateNormalization(ArithmeticError):
    """A normalization constant is too close to zero to divide by."""


# ---------- Pauli basis ----------
I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([I2, SX, SY, SZ])
PAULI.setflags(write=False)

# lowering operator |1><0| takes the excited |0> to the ground |1>
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_PLUS = SIGMA_MINUS.conj().T

LEVI_CIVITA = np.zeros((3, 3, 3))
for _a, _b, _c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_a, _b, _c] = 1.0
    LEVI_CIVITA[_b, _a, _c] = -1.0
LEVI_CIVITA.setflags(write=False)


def pauli(mu: int) -> np.ndarray:
    return PAULI[check_index(mu)]


def check_index(mu) -> int:
    if isinstance(mu, (bool, np.bool_)) or not isinstance(mu, (int, np.integer)):
        raise ParameterError(f"Pauli index must be an integer in 0..3, got {mu!r}")
    if not 0 <= mu <= 3:
        raise ParameterError(f"Pauli index must be in 0..3, got {mu}")
    return int(mu)


def dag(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def is_hermitian(a: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(a - dag(a)), initial=0.0) <= tol)


# ---------- parameters ----------
@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the thermally coupled qubit.

    ``gamma1`` is the effective longitudinal rate: z relaxes as exp(-gamma1 t),
    so it doubles as the relaxation constant Gamma of the temperature response.
    The transverse rate is derived, gamma2 = gamma1/2 + gamma_phi.
    """

    omega0: float = 1.0
    temperature: float = 1.0
    gamma1: float = 0.9
    gamma_phi: float = 0.75
    hbar: float = 1.0
    kB: float = 1.0

    def __post_init__(self):
        for name in ("omega0", "temperature", "gamma1", "gamma_phi", "hbar", "kB"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.floating, np.integer)) or not math.isfinite(value):
                raise ParameterError(f"{name} must be a finite real number, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.omega0 <= 0:
            raise ParameterError(f"omega0 must be > 0, got {self.omega0}")
        if self.temperature <= 0:
            raise ParameterError(f"temperature must be > 0, got {self.temperature}")
        if self.gamma1 < 0:
            raise ParameterError(f"gamma1 must be >= 0, got {self.gamma1}")
        if self.gamma_phi < 0:
            raise ParameterError(f"gamma_phi must be >= 0, got {self.gamma_phi}")
        if self.hbar <= 0 or self.kB <= 0:
            raise ParameterError("hbar and kB must be > 0")

    @classmethod
    def from_gamma2(cls, omega0=1.0, temperature=1.0, gamma1=0.9, gamma2=1.2, **kw) -> "ModelParams":
        gamma_phi = gamma2 - gamma1 / 2
        if gamma_phi < -1e-15:
            raise ParameterError(
                f"gamma2={gamma2} < gamma1/2={gamma1 / 2}: pure dephasing rate would be negative"
            )
        return cls(omega0, temperature, gamma1, max(gamma_phi, 0.0), **kw)

    def replace(self, **changes) -> "ModelParams":
        fields = dict(
            omega0=self.omega0,
            temperature=self.temperature,
            gamma1=self.gamma1,
            gamma_phi=self.gamma_phi,
            hbar=self.hbar,
            kB=self.kB,
        )
        fields.update(changes)
        return ModelParams(**fields)

    @property
    def gamma2(self) -> float:
        return self.gamma1 / 2 + self.gamma_phi

    @property
    def big_gamma(self) -> float:
        return self.gamma1

    @property
    def energy_ratio(self) -> float:
        """hbar*omega0 / (kB*T)."""
        return self.hbar * self.omega0 / (self.kB * self.temperature)

    @property
    def half_ratio(self) -> float:
        """hbar*omega0 / (2 kB T), the argument of every tanh/sech."""
        return self.energy_ratio / 2

    @property
    def z_eq(self) -> float:
        return -math.tanh(self.half_ratio)

    @property
    def n_th(self) -> float:
        return 1.0 / math.expm1(self.energy_ratio) if self.energy_ratio < 700 else 0.0

    def as_dict(self) -> dict:
        return dict(
            omega0=self.omega0,
            temperature=self.temperature,
            gamma1=self.gamma1,
            gamma_phi=self.gamma_phi,
            gamma2=self.gamma2,
            hbar=self.hbar,
            kB=self.kB,
        )


DEFAULTS = ModelParams()


class DerivedRates(NamedTuple):
    gamma2: float
    n_th: float
    gamma_minus: float
    gamma_plus: float
    big_gamma: float


def derived_rates(params: ModelParams) -> DerivedRates:
    """Split the effective rate gamma1 into emission/absorption by detailed balance.

    gamma_minus + gamma_plus = gamma1 and gamma_plus/gamma_minus = exp(-hbar*omega0/kB T).
    """
    if not isinstance(params, ModelParams):
        raise ParameterError("derived_rates expects ModelParams")
    boltzmann = math.exp(-params.energy_ratio)
    gamma_minus = params.gamma1 / (1.0 + boltzmann)
    gamma_plus = params.gamma1 - gamma_minus
    return DerivedRates(params.gamma2, params.n_th, gamma_minus, gamma_plus, params.big_gamma)


# ---------- states ----------
@dataclass(frozen=True)
class BlochState:
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, r) -> "BlochState":
        r = np.asarray(r, dtype=float)
        return cls(float(r[0]), float(r[1]), float(r[2]))

    @classmethod
    def from_matrix(cls, rho: np.ndarray) -> "BlochState":
        return cls(*(pauli_expectation(rho, mu) for mu in (1, 2, 3)))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def to_matrix(self) -> np.ndarray:
        return bloch_to_matrix(self.as_array())

    @property
    def norm(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)

    def is_physical(self, eps: float = 1e-12) -> bool:
        return self.norm <= 1 + eps


def bloch_to_matrix(r) -> np.ndarray:
    """rho = (1 + r . sigma)/2; r may be complex for operator (non-state) inputs."""
    r = np.asarray(r)
    return 0.5 * (I2 + np.einsum("i,ijk->jk", r, PAULI[1:]))


def pauli_expectation(rho: np.ndarray, mu: int) -> float:
    """Tr[rho sigma_mu] for a Hermitian unit-trace 2x2 matrix."""
    mu = check_index(mu)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ContractViolation(f"expected a 2x2 density matrix, got shape {rho.shape}")
    if not is_hermitian(rho, 1e-10) or abs(np.trace(rho) - 1) > 1e-10:
        raise ContractViolation("density matrix must be Hermitian with unit trace")
    if mu == 0:
        return 1.0
    return float(np.real(np.trace(rho @ PAULI[mu])))


def energies(params: ModelParams) -> np.ndarray:
    """Eigenvalues of H on |0>, |1>."""
    half = params.hbar * params.omega0 / 2
    return np.array([half, -half])


def hamiltonian(params: ModelParams) -> np.ndarray:
    return 0.5 * params.hbar * params.omega0 * SZ


def gibbs_state(params: ModelParams, temperature: float | None = None) -> np.ndarray:
    """exp(-H/kB T)/Z built from the Hamiltonian matrix (no tanh shortcut)."""
    T = params.temperature if temperature is None else temperature
    w, v = np.linalg.eigh(hamiltonian(params))
    weights = np.exp(-(w - w.min()) / (params.kB * T))
    rho = (v * (weights / weights.sum())) @ dag(v)
    return rho


def mean_energy(params: ModelParams, temperature: float | None = None) -> float:
    return float(np.real(np.trace(gibbs_state(params, temperature) @ hamiltonian(params))))
