import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tempwit import DEFAULTS, ModelParams, ParameterError
from tempwit import chsh, pdm

SQRT8 = 2 * math.sqrt(2)


def _bell_state():
    psi = np.array([1, 0, 0, 1]) / math.sqrt(2)
    return np.outer(psi, psi.conj())


def _random_pdm(seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    H = A + A.conj().T
    return pdm.PDM2(H - (np.trace(H).real - 1) / 4 * np.eye(4))


def test_bell_state_reaches_tsirelson():
    T = chsh.correlation_matrix(_bell_state())
    assert np.allclose(T, np.diag([1, -1, 1]))
    assert chsh.s_max_horodecki(T) == pytest.approx(SQRT8, abs=1e-12)
    _, best = chsh.optimize_directions(_bell_state())
    assert best == pytest.approx(SQRT8, abs=1e-6)


def test_product_state_is_local():
    rho = np.kron(np.diag([0.7, 0.3]), np.diag([0.2, 0.8]))
    assert chsh.s_max_horodecki(rho) <= 2.0


def test_thermal_t0():
    T = chsh.correlation_matrix(pdm.two_time_pdm(DEFAULTS, 0.0))
    assert chsh.s_max_horodecki(T) == pytest.approx(SQRT8, abs=1e-9)
    assert chsh.s_max_closed_form(DEFAULTS, 0.0).value == pytest.approx(SQRT8, abs=1e-9)


def test_closed_form_frozen_values():
    # 50-digit references
    assert chsh.s_max_closed_form(DEFAULTS, 1.0).value == pytest.approx(2.1375149548651975, abs=1e-13)
    assert chsh.s_max_closed_form(DEFAULTS, 2.0).value == pytest.approx(2.1174663088251997, abs=1e-13)
    assert chsh.s_max_closed_form(DEFAULTS, 2.5).value == pytest.approx(1.96, abs=5e-3)


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0, 4.0])
def test_closed_form_equals_unconjugated_horodecki(t):
    T = chsh.correlation_matrix(pdm.two_time_pdm(DEFAULTS, t))
    assert chsh.s_max_unconjugated(T) == pytest.approx(chsh.s_max_closed_form(DEFAULTS, t).value, abs=1e-12)


def test_correlation_matrix_complex_away_from_zero():
    T = chsh.correlation_matrix(pdm.two_time_pdm(DEFAULTS, 1.0))
    assert np.max(np.abs(T.imag)) > 0.1
    assert np.allclose(T.imag, -T.imag.T)


def test_closed_form_negative_radicand_flagged():
    # hot and fast-relaxing: f ~ e^{-4}, while s > c at t = 1
    p = ModelParams(temperature=100.0, gamma1=4.0, gamma_phi=0.0)
    cf = chsh.s_max_closed_form(p, 1.0)
    assert not cf.in_domain and cf.radicand < 0 and math.isnan(cf.value)
    assert chsh.s_max_closed_form(DEFAULTS, 1.0).in_domain


def test_chsh_value_bounded_by_optimum():
    R = pdm.two_time_pdm(DEFAULTS, 0.7)
    scheme, best = chsh.optimize_directions(R)
    rng = np.random.default_rng(3)
    for _ in range(200):
        v = rng.normal(size=(4, 3))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        trial = chsh.MeasurementScheme(*v)
        assert chsh.chsh_value(R, trial) <= best + 1e-9
    assert chsh.chsh_value(R, scheme) == pytest.approx(best)


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_optimizer_matches_horodecki_for_real_T(seed):
    R = _random_pdm(seed)
    T = chsh.correlation_matrix(R)
    assert np.max(np.abs(T.imag)) < 1e-12
    _, best = chsh.optimize_directions(R)
    assert best == pytest.approx(chsh.s_max_horodecki(T), abs=1e-4)


def test_optimizer_reaches_real_part_bound_for_complex_T():
    # the functional only sees Re T, so the optimiser converges to Horodecki applied to Re T
    R = pdm.two_time_pdm(DEFAULTS, 1.0)
    T = chsh.correlation_matrix(R)
    _, best = chsh.optimize_directions(R)
    assert best == pytest.approx(chsh.s_max_horodecki(T.real), abs=1e-4)
    assert best < chsh.s_max_horodecki(T)


def test_measurement_scheme_requires_unit_vectors():
    with pytest.raises(ParameterError):
        chsh.MeasurementScheme([1, 0, 0], [0, 2, 0], [0, 0, 1], [1, 0, 0])
    with pytest.raises(ParameterError):
        chsh.MeasurementScheme([1, 0], [0, 1, 0], [0, 0, 1], [1, 0, 0])


def test_input_shapes():
    with pytest.raises(ParameterError):
        chsh.s_max_horodecki(np.eye(2))
    with pytest.raises(ParameterError):
        chsh.s_max_horodecki(np.full((3, 3), np.nan))
    with pytest.raises(ParameterError):
        chsh.optimize_directions(_bell_state(), coarse=4)


def test_closed_vs_horodecki_report():
    rows = chsh.closed_vs_horodecki(DEFAULTS, [0.0, 1.0])
    assert rows[0].difference == pytest.approx(0.0, abs=1e-9)
    assert rows[1].s_max_horodecki > chsh.TSIRELSON_BOUND  # T^dagger T overshoots for complex T
