import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tempwit import DEFAULTS, AccuracyError, ModelParams, ParameterError
from tempwit import response as rs
from tempwit.lindblad import bloch_generator, two_time_correlator
from tempwit.model import mean_energy
from tempwit.selfcheck import kubo_lorentzian

omegas = st.floats(1e-3, 50.0)


def test_c_eq_frozen():
    assert rs.equilibrium_heat_capacity(DEFAULTS) == pytest.approx(0.19661193324148185, abs=1e-16)


@given(st.floats(0.2, 5.0), st.floats(0.2, 5.0))
def test_c_eq_is_derivative_of_energy(w0, T):
    p = ModelParams(omega0=w0, temperature=T)
    h = 1e-5 * T
    fd = (mean_energy(p, T + h) - mean_energy(p, T - h)) / (2 * h)
    # centered-difference round-off is about eps |<H>| / h
    roundoff = 4 * np.finfo(float).eps * w0 / h
    assert fd == pytest.approx(rs.equilibrium_heat_capacity(p), rel=1e-6, abs=roundoff)


@given(omegas)
def test_debye_identities(w):
    p = DEFAULTS
    s = rs.complex_heat_capacity(p, w)
    c_eq, g = rs.equilibrium_heat_capacity(p), p.big_gamma
    assert s.c_imag / s.c_real == pytest.approx(w / g, rel=1e-12)
    assert s.c_real == pytest.approx(c_eq * g * g / (g * g + w * w), rel=1e-12)
    assert s.c_imag <= c_eq / 2 + 1e-15


def test_heat_capacity_edges():
    assert rs.complex_heat_capacity(DEFAULTS, 0.0).c_imag == 0.0
    assert rs.complex_heat_capacity(DEFAULTS, 0.0).c_real == rs.equilibrium_heat_capacity(DEFAULTS)
    frozen = DEFAULTS.replace(gamma1=0.0)
    assert rs.complex_heat_capacity(frozen, 1.0).value == 0
    with pytest.raises(ParameterError):
        rs.complex_heat_capacity(DEFAULTS, math.nan)


def test_default_grid():
    g = rs.default_omega_grid(DEFAULTS)
    assert len(g) == 200
    assert g[0] == pytest.approx(0.009) and g[-1] == pytest.approx(90.0)
    assert np.all(np.diff(np.log(g)) > 0)


def test_commutator_is_odd_and_imaginary():
    d = (0.3, -0.5, 0.8)
    for t in (0.0, 0.4, 2.0):
        k = rs.commutator_correlator(DEFAULTS, d, t)
        assert k.real == 0.0
        assert rs.commutator_correlator(DEFAULTS, d, -t) == pytest.approx(-k)


def test_commutator_matches_regression_correlators():
    # <[H(t), H]> = sum h h (G_ab - conj G_ab), built independently from two-time correlators
    d = np.array([0.3, -0.5, 0.8])
    h = 0.5 * d
    for t in (0.3, 1.1, 3.0):
        expected = sum(
            h[a] * h[b] * (two_time_correlator(a + 1, b + 1, t, DEFAULTS)
                           - np.conj(two_time_correlator(a + 1, b + 1, t, DEFAULTS)))
            for a in range(3) for b in range(3)
        )
        assert rs.commutator_correlator(DEFAULTS, d, t) == pytest.approx(expected, abs=1e-14)


def test_z_drive_commutator_vanishes():
    assert rs.commutator_correlator(DEFAULTS, (0, 0, 1), 1.3) == 0
    assert rs.kubo_spectrum(DEFAULTS, (0, 0, 1), 1.0).value == 0


@pytest.mark.parametrize("w", [0.3, 1.0, 2.5])
def test_kubo_vs_lorentzian(w):
    res = rs.kubo_spectrum(DEFAULTS, (1.0, 0.0, 0.0), w)
    assert abs(res.value.real - kubo_lorentzian(DEFAULTS, 1.0, w)) <= res.error
    long = rs.kubo_spectrum(DEFAULTS, (1.0, 0.0, 0.0), w, t_max=80.0)
    assert long.value.real == pytest.approx(kubo_lorentzian(DEFAULTS, 1.0, w), abs=1e-12)


def test_kubo_tail_rejection():
    with pytest.raises(AccuracyError):
        rs.kubo_spectrum(DEFAULTS, (1.0, 0, 0), 1.0, t_max=2.0)
    with pytest.raises(AccuracyError):
        rs.default_t_max(ModelParams(gamma1=0.0, gamma_phi=0.0))


def test_kubo_rejects_bad_drive():
    with pytest.raises(ParameterError):
        rs.kubo_spectrum(DEFAULTS, (1.0, 0.0), 1.0)
    with pytest.raises(ParameterError):
        rs.kubo_spectrum(DEFAULTS, (math.nan, 0.0, 0.0), 1.0)


def test_susceptibility_is_causal():
    assert rs.kubo_susceptibility(DEFAULTS, (1, 0, 0), -0.5) == 0.0
    assert rs.kubo_susceptibility(DEFAULTS, (1, 0, 0), 0.5) != 0.0


def _resolvent_transform(omega):
    """int_0^inf G_conn(t) e^{i omega t} dt from the generator resolvent, x,y,z block."""
    A, _ = bloch_generator(DEFAULTS)
    z = DEFAULTS.z_eq
    # connected G(0)_{ij} = <sigma_i sigma_j> - <sigma_i><sigma_j>
    G0 = np.array([[1, 1j * z, 0], [-1j * z, 1, 0], [0, 0, 1 - z * z]], dtype=complex)
    return -np.linalg.solve(A + 1j * omega * np.eye(3), G0)


@pytest.mark.parametrize("w", [0.0, 0.7, 1.0, -1.3])
def test_one_sided_transform_vs_resolvent(w):
    expected = _resolvent_transform(w)
    for a in range(3):
        for b in range(3):
            F, err = rs.one_sided_transform(a + 1, b + 1, w, DEFAULTS, t_max=60.0)
            assert abs(F - expected[a, b]) < 1e-9 + err


def test_response_tensor_structure():
    T = rs.response_tensor(DEFAULTS, (1.0, 1.0, 1.0), 1.0)
    assert T.error < 1e-5
    assert T.entries[0, 2] == 0 and T.entries[2, 1] == 0
    expected = 0.25 * _resolvent_transform(1.0)
    assert np.allclose(T.entries, expected, atol=1e-5)
    rows = list(T.rows())
    assert len(rows) == 9 and rows[0][:2] == ("x", "x")
    with pytest.raises(AccuracyError):
        rs.response_tensor(DEFAULTS, (1.0, 1.0, 1.0), 1.0, tol=1e-12)
    with pytest.raises(ParameterError):
        rs.response_tensor(DEFAULTS, (1.0, 0, 0), 1.0, ordering="sideways")


def test_reverse_ordering_is_conjugate_in_time_domain():
    for t in (0.2, 1.5):
        f = rs.connected_correlator(1, 2, t, DEFAULTS)
        r = rs.connected_correlator(1, 2, t, DEFAULTS, ordering="reverse")
        assert r == pytest.approx(np.conj(f), abs=1e-14)


@pytest.mark.parametrize("w", [0.5, 1.0, 2.0])
def test_kubo_from_correlators_agrees(w):
    d = (0.6, -0.3, 0.2)
    direct = rs.kubo_spectrum(DEFAULTS, d, w)
    rebuilt = rs.kubo_spectrum_from_correlators(DEFAULTS, d, w)
    assert abs(direct.value - rebuilt) < 1e-6
