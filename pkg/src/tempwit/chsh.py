"""Temporal CHSH: correlation matrix, Bell functional and its maximisation.

T_ij = Tr[R sigma_i (x) sigma_j] is taken on ``PDM2.operator()``. For the
closed-form thermal PDM this makes T the x,y,z block of the coefficient table
divided by N(t), complex off the diagonal. The Bell functional uses Re(a^T T b);
the Horodecki value uses the two largest eigenvalues of T^dagger T. For a
complex T these differ, and the direction optimiser (real unit vectors) can
only reach the first one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .model import PAULI, DegenerateNormalization, ModelParams, ParameterError
from .pdm import N_FLOOR, PDM2, pdm_normalization, thermal_terms, two_time_pdm

CLASSICAL_BOUND = 2.0
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)


def correlation_matrix(pdm: PDM2) -> np.ndarray:
    op = pdm.operator() if isinstance(pdm, PDM2) else np.asarray(pdm, dtype=complex)
    if op.shape != (4, 4):
        raise ParameterError("correlation_matrix needs a two-time (4x4) object")
    T = np.empty((3, 3), dtype=complex)
    for i in range(3):
        for j in range(3):
            T[i, j] = np.trace(op @ np.kron(PAULI[i + 1], PAULI[j + 1]))
    return T


def _unit(v, name) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise ParameterError(f"{name} must be a finite real 3-vector")
    if abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise ParameterError(f"{name} is not a unit vector (|{name}| = {np.linalg.norm(v)!r})")
    return v


@dataclass(frozen=True)
class MeasurementScheme:
    a1: np.ndarray
    a2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray

    def __post_init__(self):
        for name in ("a1", "a2", "b1", "b2"):
            object.__setattr__(self, name, _unit(getattr(self, name), name))


def _as_T(obj) -> np.ndarray:
    if isinstance(obj, PDM2):
        return correlation_matrix(obj)
    T = np.asarray(obj, dtype=complex)
    if T.shape == (4, 4):
        return correlation_matrix(T)
    if T.shape != (3, 3):
        raise ParameterError("expected a PDM2, a 4x4 operator or a 3x3 correlation matrix")
    return T


def chsh_value(pdm, scheme: MeasurementScheme) -> float:
    """|E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2)| with E(a,b) = Re(a^T T b)."""
    Tr = _as_T(pdm).real
    E = lambda a, b: a @ Tr @ b  # noqa: E731
    return abs(E(scheme.a1, scheme.b1) + E(scheme.a1, scheme.b2) + E(scheme.a2, scheme.b1) - E(scheme.a2, scheme.b2))


def s_max_horodecki(T) -> float:
    T = _as_T(T)
    if not np.all(np.isfinite(T)):
        raise ParameterError("correlation matrix has non-finite entries")
    ev = np.linalg.eigvalsh(T.conj().T @ T)
    return 2.0 * math.sqrt(max(ev[-1] + ev[-2], 0.0))


def s_max_unconjugated(T) -> float:
    """2 sqrt(sum of the two largest Re-eigenvalues of T^T T), no conjugation.

    Diagnostic only: for the closed-form thermal PDM this reproduces the
    closed form (2/N) sqrt(c^2 - s^2 + f^2) whenever f^2 >= c^2 - s^2.
    """
    T = _as_T(T)
    ev = np.sort(np.linalg.eigvals(T.T @ T).real)
    total = ev[-1] + ev[-2]
    return 2.0 * math.sqrt(total) if total >= 0 else math.nan


class ClosedForm(NamedTuple):
    value: float  # nan when the radicand is negative
    radicand: float
    normalization: float
    in_domain: bool


def s_max_closed_form(params: ModelParams, t: float) -> ClosedForm:
    """(2/N(t)) sqrt(c^2 - s^2 + f^2), evaluated literally; a negative radicand is flagged, not clamped."""
    c, s, f, _ = thermal_terms(params, t)
    N = pdm_normalization(params, t)
    if N <= N_FLOOR:
        raise DegenerateNormalization(f"N(t) = {N!r} at t = {t}")
    radicand = c * c - s * s + f * f
    if radicand < 0:
        return ClosedForm(math.nan, radicand, N, False)
    return ClosedForm(2.0 / N * math.sqrt(radicand), radicand, N, True)


# ---------- direction optimiser ----------
def _frame(theta, phi):
    """Unit vector c(theta, phi) and an orthonormal pair spanning its complement."""
    st, ct, sp, cp = np.sin(theta), np.cos(theta), np.sin(phi), np.cos(phi)
    c = np.stack([st * cp, st * sp, ct], axis=-1)
    e1 = np.stack([ct * cp, ct * sp, -st], axis=-1)
    e2 = np.stack([-sp, cp, np.zeros_like(phi)], axis=-1)
    return c, e1, e2


def _objective(Tr, theta, phi, psi):
    """|Tr c|^2 + |Tr c_perp|^2; the CHSH value for the best a's and b-split is 2 sqrt of this."""
    c, e1, e2 = _frame(theta, phi)
    cp = np.cos(psi)[..., None] * e1 + np.sin(psi)[..., None] * e2
    u = c @ Tr.T
    v = cp @ Tr.T
    return np.sum(u * u, axis=-1) + np.sum(v * v, axis=-1)


def _any_perp(v):
    trial = np.array([1.0, 0.0, 0.0]) if abs(v[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    w = trial - (trial @ v) * v
    return w / np.linalg.norm(w)


def optimize_directions(pdm, coarse: int = 32, refine_iters: int = 50) -> tuple[MeasurementScheme, float]:
    """Maximise the Bell functional over real unit vectors by grid search plus pattern ascent.

    For fixed b1, b2 the best a's are along Tr(b1 + b2) and Tr(b1 - b2). Writing
    b1 +- b2 = 2 cos(alpha) c, 2 sin(alpha) c_perp reduces the search to the
    orthonormal pair (c, c_perp): three angles (theta, phi) for c, psi for c_perp.
    """
    if coarse < 8:
        raise ParameterError("coarse grid needs at least 8 points per angle")
    Tr = _as_T(pdm).real

    thetas = (np.arange(coarse // 2) + 0.5) * math.pi / (coarse // 2)
    phis = np.arange(coarse) * 2 * math.pi / coarse
    psis = np.arange(coarse // 2) * math.pi / (coarse // 2)
    TH, PH, PS = np.meshgrid(thetas, phis, psis, indexing="ij")
    vals = _objective(Tr, TH, PH, PS)
    k = np.unravel_index(np.argmax(vals), vals.shape)
    x = np.array([TH[k], PH[k], PS[k]])
    best = float(vals[k])

    step = math.pi / coarse
    for _ in range(refine_iters):
        improved = False
        for d in range(3):
            for sign in (1.0, -1.0):
                trial = x.copy()
                trial[d] += sign * step
                val = float(_objective(Tr, *trial))
                if val > best:
                    x, best, improved = trial, val, True
        if not improved:
            step *= 0.5

    c, e1, e2 = _frame(x[0], x[1])
    cperp = math.cos(x[2]) * e1 + math.sin(x[2]) * e2
    u, v = Tr @ c, Tr @ cperp
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    alpha = math.atan2(nv, nu)
    b1 = math.cos(alpha) * c + math.sin(alpha) * cperp
    b2 = math.cos(alpha) * c - math.sin(alpha) * cperp
    a1 = u / nu if nu > 1e-300 else _any_perp(c)
    a2 = v / nv if nv > 1e-300 else _any_perp(a1)
    scheme = MeasurementScheme(a1, a2, b1 / np.linalg.norm(b1), b2 / np.linalg.norm(b2))
    return scheme, chsh_value(Tr, scheme)


# ---------- comparison report ----------
class BellComparison(NamedTuple):
    t: float
    s_max_closed: float
    s_max_horodecki: float
    s_max_unconjugated: float
    difference: float


def closed_vs_horodecki(params: ModelParams, times) -> list[BellComparison]:
    rows = []
    for t in times:
        T = correlation_matrix(two_time_pdm(params, float(t)))
        closed = s_max_closed_form(params, float(t)).value
        hor = s_max_horodecki(T)
        rows.append(BellComparison(float(t), closed, hor, s_max_unconjugated(T), closed - hor))
    return rows
