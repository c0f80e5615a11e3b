import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tempwit import DEFAULTS, ModelParams, ParameterError
from tempwit import pdm
from tempwit.model import PAULI, ContractViolation, DegenerateNormalization, gibbs_state

ts = st.floats(0.0, 12.0)

# 50-digit references: t -> (c, s, f, N)
REFERENCE = {
    0.5: (0.48162752159864266, 0.26311431422663248, 0.71501348135227083, 0.66956713113738904),
    1.0: (0.16273592721029991, 0.25344619011619897, 0.53329805422979525, 0.46469247716259877),
    2.0: (-0.037751989279420443, 0.082489601492955176, 0.34355120293772756, 0.31701180609472167),
    5.0: (0.00070312825965490836, -0.0023769356330794634, 0.22228891217709959, 0.30592379217410235),
}


@pytest.mark.parametrize("t", sorted(REFERENCE))
def test_terms_frozen(t):
    c, s, f, _ = pdm.thermal_terms(DEFAULTS, t)
    rc, rs_, rf, rN = REFERENCE[t]
    assert (c, s, f) == pytest.approx((rc, rs_, rf), abs=1e-15)
    assert pdm.pdm_normalization(DEFAULTS, t) == pytest.approx(rN, abs=1e-15)


def test_t0_table():
    R = pdm.two_time_pdm(DEFAULTS, 0.0)
    assert R.layout == "pauli"
    assert np.trace(R.matrix) == pytest.approx(1.0)
    # at zero delay the product-basis operator is a Hermitian projector-like object with trace 1
    op = R.operator()
    assert np.trace(op).real == pytest.approx(1.0) and np.allclose(op, op.conj().T)


@given(ts)
def test_unit_trace_hermitian(t):
    R = pdm.two_time_pdm(DEFAULTS, t)
    assert abs(np.trace(R.matrix) - 1) < 1e-12
    assert np.allclose(R.matrix, R.matrix.conj().T)
    assert R.t1 - R.t0 == pytest.approx(t)


@given(ts, st.floats(0.2, 4.0), st.floats(0.2, 4.0), st.floats(0.0, 2.0), st.floats(0.0, 2.0))
def test_spectrum_analytic_vs_numeric(t, w0, T, g1, gphi):
    p = ModelParams(omega0=w0, temperature=T, gamma1=g1, gamma_phi=gphi)
    try:
        R = pdm.two_time_pdm(p, t)
    except DegenerateNormalization:
        return
    a = pdm.spectrum_analytic(p, t).eigenvalues
    n = pdm.spectrum_numeric(R).eigenvalues
    assert np.allclose(a, n, atol=1e-10 / pdm.pdm_normalization(p, t))
    assert a.sum() == pytest.approx(1.0, abs=1e-10)


def test_negativity_definition():
    s = pdm.PdmSpectrum(np.array([0.7, -0.1, 0.5, -0.1]))
    assert s.negativity == pytest.approx(0.2)
    assert list(s.eigenvalues) == [0.7, 0.5, -0.1, -0.1]
    assert s.min_eigenvalue == -0.1


def test_negative_only_between_quarter_and_seven_quarters_pi():
    for t in np.linspace(0.0, 7.0, 701):
        neg = pdm.spectrum_analytic(DEFAULTS, t).negativity
        inside = math.pi / 4 + 1e-9 < t < 7 * math.pi / 4 - 1e-9
        assert (neg > 0) == inside, t


def test_gibbs_single_event():
    R = pdm.build_pdm_general(pdm.gibbs_oracle(DEFAULTS), 1)
    assert np.allclose(R, gibbs_state(DEFAULTS), atol=1e-14)


def test_general_builder_product_state():
    # uncorrelated product oracle reproduces rho (x) rho
    rho = gibbs_state(DEFAULTS)
    m = [np.trace(rho @ P).real for P in PAULI]
    R = pdm.build_pdm_general(lambda idx: np.prod([m[i] for i in idx]), 3)
    assert np.allclose(R, np.kron(np.kron(rho, rho), rho), atol=1e-14)


def test_general_builder_at_zero_delay_is_hermitian_unit_trace():
    R = pdm.build_pdm_general(pdm.thermal_oracle(DEFAULTS, (0.0, 0.0)), 2)
    assert np.trace(R).real == pytest.approx(1.0)
    assert np.allclose(R, R.conj().T)


@pytest.mark.parametrize(
    "oracle, n",
    [(lambda idx: 0.5, 1), (lambda idx: 1.0 if idx == (0,) else 2.0, 1), (lambda idx: 1.0, 0)],
)
def test_general_builder_contract(oracle, n):
    with pytest.raises((ContractViolation, ParameterError)):
        pdm.build_pdm_general(oracle, n)


def test_thermal_oracle_validates_times():
    with pytest.raises(ParameterError):
        pdm.thermal_oracle(DEFAULTS, (1.0, 0.5))
    with pytest.raises(ParameterError):
        pdm.thermal_oracle(DEFAULTS, (0.0, 1.0, 2.0))


def test_pdm2_contract():
    with pytest.raises(ContractViolation):
        pdm.PDM2(np.eye(3) / 3)
    with pytest.raises(ContractViolation):
        pdm.PDM2(np.eye(4) / 2)
    bad = np.eye(4, dtype=complex) / 4
    bad[0, 1] = 1j
    with pytest.raises(ContractViolation):
        pdm.PDM2(bad)


def test_degenerate_normalisation_reported():
    # gamma1 = 0 keeps f at 1; choose c = -1 exactly: undamped transverse, t = pi
    p = ModelParams(gamma1=0.0, gamma_phi=0.0)
    with pytest.raises(DegenerateNormalization):
        pdm.two_time_pdm(p, math.pi)
    with pytest.raises(DegenerateNormalization):
        pdm.spectrum_analytic(p, math.pi)


def test_heat_capacity_route_identity_tensor():
    R = pdm.pdm_from_heat_capacity(np.eye(3), pdm.MarginalData())
    assert np.allclose(R.matrix, np.eye(4) / 4)
    assert R.raw_trace == 4


def test_heat_capacity_route_reproduces_thermal_pdm():
    for t in (0.0, 1.0, 3.0):
        R = pdm.pdm_from_heat_capacity(pdm.thermal_coefficients(DEFAULTS, t), pdm.MarginalData.thermal(DEFAULTS))
        assert np.allclose(R.matrix, pdm.two_time_pdm(DEFAULTS, t).matrix, atol=1e-14)


def test_heat_capacity_route_contract():
    with pytest.raises(ContractViolation):
        pdm.pdm_from_heat_capacity(np.ones((2, 2)), pdm.MarginalData())
    with pytest.raises(DegenerateNormalization):
        pdm.pdm_from_heat_capacity(-np.eye(3) / 3, pdm.MarginalData())


def test_to_json_round_trip():
    R = pdm.two_time_pdm(DEFAULTS, 1.0)
    d = R.to_json()
    back = np.array([complex(a, b) for a, b in d["entries"]]).reshape(4, 4)
    assert np.array_equal(back, R.matrix)
    assert d["layout"] == "pauli" and d["params"]["gamma2"] == pytest.approx(1.2)


def test_negative_time_rejected():
    with pytest.raises(ParameterError):
        pdm.two_time_pdm(DEFAULTS, -1.0)
