import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcyc import dulac as D
from nilcyc.compensator import omega
from nilcyc.errors import CompositionDomainError, DomainError, ParamError
from nilcyc.normal_form import SigmaClass

IRR = SigmaClass.irrational(math.sqrt(2))
ONE = SigmaClass.integer(1)


def test_params_invariants():
    with pytest.raises(ParamError):
        D.DulacParams(IRR, 1.5, eta=0.1)
    with pytest.raises(ParamError):
        D.DulacParams(ONE, 1.0, Phi={(1, 0): 0.1})
    P = D.DulacParams(ONE, 1.05, eta=0.3, r0=1.0, rho0=0.2, Phi={(0, 1): 0.01})
    assert P.alpha == pytest.approx(0.05)
    assert D.DulacParams.from_dict(P.to_dict()) == P


def test_type_I_examples():
    P = D.DulacParams(ONE, 1.05, eta=0.3, r0=1.0, rho0=0.2)
    assert D.dulac_type_I(0.7, P.nu0, P) == pytest.approx(0.7, rel=1e-15)
    assert D.dulac_type_I(0.0, 0.5 * P.nu0, D.DulacParams(ONE, 1.05)) == 0.0
    ref = 0.3 * 0.2 * 0.1**1.05 * omega(0.1, 0.05)
    assert D.dulac_type_I(0.0, 0.1 * P.nu0, P) == pytest.approx(ref, rel=1e-14)
    assert D.integrate_type_I(0.0, 0.1 * P.nu0, P) == pytest.approx(ref, rel=1e-9)
    with pytest.raises(DomainError):
        D.dulac_type_I(0.1, 2 * P.nu0, P)


def test_type_II_examples():
    P = D.DulacParams(IRR, math.sqrt(2) + 0.01, r0=0.5, rho0=0.4, Y0=0.7)
    assert D.dulac_type_II(0.5, 0.3, P) == 0.7
    assert D.dulac_type_II(0.01, 0.3, D.DulacParams(IRR, 1.4, Y0=0.0)) == 0.0
    with pytest.raises(DomainError):
        D.dulac_type_II(0.6, 0.3, P)


@pytest.mark.parametrize(
    "P",
    [
        D.DulacParams(IRR, math.sqrt(2) - 0.03, Y0=0.7),
        D.DulacParams(SigmaClass.rational(3, 2), 1.47, rho0=0.5, Y0=-0.3),
        D.DulacParams(ONE, 1.02, rho0=0.5, Y0=0.4),
    ],
)
def test_linear_closed_form_matches_flow(P):
    for r in (1e-4, 1e-3, 1e-2, 1e-1):
        a = D.dulac_type_II(r, 0.2, P)
        assert D.integrate_type_II(r, 0.2, P) == pytest.approx(a, rel=1e-10)


@pytest.mark.parametrize("alpha", [0.05, 0.0, -0.05])
def test_inhomogeneous_closed_form_matches_flow(alpha):
    P = D.DulacParams(ONE, 1 + alpha, eta=0.3, rho0=0.2, Y0=0.25)
    for r in (1e-4, 1e-2):
        a = D.dulac_type_II(r, 0.3, P)
        assert D.integrate_type_II(r, 0.3, P) == pytest.approx(a, rel=1e-9)


def test_backward_target_reaches_rho_section():
    # flowing backward to rho = rho0 undoes the forward linear map
    P = D.DulacParams(IRR, 1.3, r0=1.0, rho0=1.0)
    u, v, Y = 0.2, 0.05, 0.5
    out = D.integrate_transition(P, u, v, Y, target="rho")
    assert out == pytest.approx(Y * (1 / v) ** 1.3, rel=1e-10)
    with pytest.raises(ParamError):
        D.integrate_transition(P, u, v, Y, target="x")
    with pytest.raises(DomainError):
        D.integrate_transition(P, 2.0, v, Y)


def test_nonlinear_phi_within_envelope():
    P = D.DulacParams(ONE, 1.05, eta=0.3, Y0=0.5, Phi={(0, 1): 0.01})
    ratios = [abs(D.phi_residual(r, 0.3, P)) / D.phi_envelope(r, P) for r in np.geomspace(1e-4, 1e-1, 7)]
    assert max(ratios) <= 1.0
    # and the residual itself shrinks toward the saddle
    res = [abs(D.phi_residual(r, 0.3, P)) for r in (1e-2, 1e-4)]
    assert res[1] < res[0]


def test_center_composition_vanishes():
    P = D.DulacParams(IRR, math.sqrt(2) + 0.02, Y0=0.8)
    V = D.compose_boundary_displacement(D.type_II_map(P), D.type_II_map(P), D.regular_S(lambda r, rho: 1.0),
                                        D.regular_T(lambda Y: Y))
    g = np.geomspace(1e-4, 0.5, 10)
    assert max(abs(V(r, rho)) for r in g for rho in g) < 1e-12


@pytest.mark.parametrize("c", [1e-6, -1e-6])
def test_perturbed_transition_leading_term(c):
    P = D.DulacParams(IRR, math.sqrt(2) + 0.02, Y0=0.8)
    V = D.compose_boundary_displacement(D.type_II_map(P), D.type_II_map(P),
                                        D.regular_S(lambda r, rho: 1 + c * rho), D.regular_T(lambda Y: Y))
    r, rho = 0.01, 0.3
    lead = P.sigma_bar * c * rho * r**P.sigma_bar * P.Y0
    assert np.sign(V(r, rho)) == np.sign(c)
    assert V(r, rho) == pytest.approx(lead, rel=1e-5)


def test_composition_domain_guard():
    P = D.DulacParams(IRR, 1.4, Y0=0.8)
    V = D.compose_boundary_displacement(D.type_II_map(P), D.type_II_map(P), D.regular_S(lambda r, rho: 10.0),
                                        D.regular_T(lambda Y: Y))
    with pytest.raises(CompositionDomainError):
        V(0.5, 0.1)


@settings(max_examples=20, deadline=None)
@given(st.floats(1e-4, 0.5), st.floats(0.01, 1.0), st.floats(-0.05, 0.05), st.floats(-2, 2))
def test_linear_flow_property(r, rho, shift, Y0):
    P = D.DulacParams(IRR, math.sqrt(2) + shift, Y0=Y0)
    a = D.dulac_type_II(r, rho, P)
    assert D.integrate_type_II(r, rho, P) == pytest.approx(a, rel=1e-10, abs=1e-300)
