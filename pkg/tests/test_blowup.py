import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcyc import blowup as b
from nilcyc.errors import DegenerateA, DomainError, ParamError


def fam(B, mu=(0, 0, 0, 0, 0), variant="Unfold"):
    return b.QuadraticFamily(B, tuple(mu), variant)


def test_inf_field():
    F = b.vector_field(fam(1.5, variant="Inf"))
    X, Y = sp.symbols(F.names)
    assert sp.expand(F.P - (-Y + sp.Rational(3, 2) * X**2)) == 0
    assert sp.expand(F.Q - (X + X * Y)) == 0
    with pytest.raises(ParamError):
        fam(1.5, (0.1, 0, 0, 0, 0), "Inf")


def test_round_trip_family():
    f = fam(1.2, (0.01, -0.02, 0.0, 0.03, 0.04))
    assert b.QuadraticFamily.from_dict(f.to_dict()) == f


def test_localization_at_infinity():
    L = b.localize_at_infinity(fam(1.5))
    V, W = sp.symbols(L.names)
    ref_P = W + (1 - sp.Rational(3, 2)) * V**2 + V**2 * W
    assert sp.expand(L.P - ref_P) == 0
    assert sp.expand(L.Q - (V * W + V * W**2)) == 0
    assert L.same_as(b.localized_reference(fam(1.5)))


@pytest.mark.parametrize("B,mu3", [(1.5, 0.0), (0.8, 0.1), (2.0, -0.3)])
def test_divergence_on_equator(B, mu3):
    f = fam(B, (0, 0, mu3, 0, 0))
    V = sp.Symbol(b.localize_at_infinity(f).names[0])
    ref = (3 - 2 * b.q(B)) * V - 2 * b.q(mu3)
    assert sp.simplify(b.divergence_on_equator(f) - ref) == 0


def test_localized_mu3_coefficient():
    L = b.localize_at_infinity(fam(1.5, (0, 0, 0.3, 0, 0)))
    J = L.jacobian(0.0, 0.0)
    assert J[1, 1] == pytest.approx(-0.3)


def test_family_rescaling_example():
    F = b.family_rescaling_field((0, 0, 1), -0.5)
    X, Y = sp.symbols(F.names)
    assert sp.expand(F.P - (Y - X**2 / 2)) == 0
    assert sp.expand(F.Q - (Y + X * Y)) == 0
    G = b.family_rescaling_field((1, 0, 0), -0.5)
    assert G(0.7, 0.0)[1] == pytest.approx(1.0)
    with pytest.raises(ParamError):
        b.family_rescaling_field((1, 1, 0), -0.5)


@pytest.mark.parametrize("a", [-0.5, -0.25, 0.25])
def test_eigenvalue_table_from_jacobians(a):
    ref = b.eigenvalue_table(a)
    for sp_info in b.singular_points_on_blowup(a):
        assert np.allclose(sp_info.eigenvalues, ref[sp_info.label], atol=1e-10, rtol=0)


def test_eigenvalue_rows_at_a_minus_half():
    t = b.eigenvalue_table(-0.5)
    assert t["P3"] == pytest.approx((0.5, -0.5, -2.0))
    assert t["P1"] == pytest.approx((0.5, -0.5, -2.0))
    assert b.sigma_ratio("P3", -0.5) == pytest.approx(2 * (1 - 2 * -0.5))
    assert b.sigma_ratio("P1", 0.25) == pytest.approx((2 * 0.25 - 1) / 0.25)
    with pytest.raises(DegenerateA):
        b.singular_points_on_blowup(0.5)


@pytest.mark.parametrize("chart", b.CHARTS)
def test_rrho_invariance_exact(chart):
    mb1, mb2, mb3, eta = sp.symbols("m1 m2 m3 eta")
    C = b.blown_up_chart(chart, sp.Rational(-1, 4), (mb1, mb2, mb3), eta)
    assert C.foliation_defect() == 0


def test_invariant_parabola_b15():
    coeffs = b.invariant_parabola(1.5, 0.0)
    assert coeffs == (1, 0, sp.Rational(-1, 3))
    xs = np.array([-1.0, 0.0, 1.0, 2.0])
    assert np.all(np.abs(b.tangency_defect(fam(1.5), coeffs, xs)) < 1e-12)
    assert b.is_identically_zero(b.parabola_defect(fam(1.5), coeffs))


def test_invariant_parabola_with_mu5():
    B, mu5 = 1.5, 0.05
    f = fam(B, (0, 0, 0, 0, mu5))
    coeffs = b.invariant_parabola(B, mu5)
    assert b.is_identically_zero(b.parabola_defect(f, coeffs))
    # the constant as printed leaves a defect proportional to mu5^2
    printed = b.invariant_parabola(B, mu5, as_printed=True)
    assert not b.is_identically_zero(b.parabola_defect(f, printed))


def test_b1_parabola():
    coeffs = b.invariant_parabola(1.0, 0.0)
    assert coeffs == (sp.Rational(1, 2), 0, sp.Rational(-1, 2))
    f = fam(1.0, (0, 0, 0, 0, 0.2), "UnfoldB1")
    assert b.is_identically_zero(b.parabola_defect(f, coeffs))


def test_parabola_guard():
    coeffs = b.invariant_parabola(1.5, 0.0)
    defect = b.tangency_defect(fam(1.5, (0, 0.1, 0, 0, 0)), coeffs, np.array([0.0, 1.0]))
    assert np.max(np.abs(defect)) > 1e-3


def test_invariant_line():
    assert b.invariant_line_residual(fam(1.5)) == 0
    f = fam(1.0, (0, 0, -0.2, 0, 0.2))
    assert b.invariant_line_residual(f) == 0
    assert b.is_identically_zero(b.line_defect(f))
    F = b.vector_field(f)
    for x0 in (0.0, 1.0, -1.0):
        assert F(x0, -1.0)[1] == pytest.approx(0.0, abs=1e-15)
    g = fam(1.5, (0, 0, 0.1, 0, 0))
    assert b.invariant_line_residual(g) == pytest.approx(0.1)
    assert b.vector_field(g)(0.0, -1.0)[1] == pytest.approx(0.1)


def test_integrability_labels():
    assert b.integrability_residuals(fam(1.5)) == ((0.0, 0.0, 0.0), "I^1_14")
    assert b.integrability_residuals(fam(0.75))[1] == "I^1_6b"
    assert b.integrability_residuals(fam(1.5, (0, 0, 0, 0.01, 0))) == ((0.0, 0.01, 0.0), None)


def test_restricted_field():
    assert b.beta(1.5) == pytest.approx(1.0)
    G = b.restricted_rho_xbar_field(1.5, 0.2, 0.0)
    for xb in (0.3, 0.8):
        for rho in (0.1, 0.4):
            p1, q1 = G(rho, xb)
            p2, q2 = G(rho, -xb)
            assert p1 == pytest.approx(-p2)
            assert q1 == pytest.approx(q2)
    for B in (0.6, 0.9, 1.5, 3.0):
        be = b.beta(B)
        ev = np.linalg.eigvals(b.restricted_rho_xbar_field(B, 0.1, 0.2).jacobian(0.0, be))
        assert np.all(np.abs(ev) > 1e-6)
        assert sorted(ev.real) == pytest.approx(sorted([-be, 2 * (1 - 2 * B) * be]))
    with pytest.raises(DomainError):
        b.restricted_rho_xbar_field(0.5, 0.1, 0.1)


def test_portrait_runs_forward_and_backward():
    F = b.family_rescaling_field((0, 0, 1), -0.5)
    trajs = b.portrait(F, [(0.1, 0.2)], t_max=1.0, n=11)
    assert len(trajs) == 2
    fwd, bwd = trajs
    assert fwd[0, 0] == 0 and fwd[-1, 0] > 0 and bwd[-1, 0] < 0
    assert fwd[0, 1:] == pytest.approx([0.1, 0.2])


@settings(max_examples=30, deadline=None)
@given(st.floats(0.55, 3.0), st.floats(-0.2, 0.2))
def test_line_invariant_whenever_condition_holds(B, mu5):
    f = fam(B, (0, 0, (1 - 2 * B) * mu5, 0, mu5))
    assert b.invariant_line_residual(f) == pytest.approx(0.0, abs=1e-14)
