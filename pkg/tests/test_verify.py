import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import hyp2f1

from nilcyc import verify as V
from nilcyc.errors import DomainError, PoleError


def test_melnikov_parabola():
    assert V.melnikov_parabola(0) == 0
    assert V.melnikov_parabola(1) == pytest.approx(math.pi, abs=1e-8)
    assert V.melnikov_parabola(-2) == pytest.approx(-2 * math.pi, abs=1e-8)


def test_divergence_integral_b1():
    assert V.divergence_integral(1.0, 0.1, "B1") == pytest.approx(0.2 * math.pi, abs=1e-6)


def test_divergence_integral_zero_mu5():
    assert V.divergence_integral(1.5, 0.0) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("B,mu5", [(1.5, 1e-3), (1.5, 1e-2), (2.0, 0.05), (0.8, -0.02)])
def test_divergence_integral_matches_exact(B, mu5):
    assert V.divergence_integral(B, mu5) == pytest.approx(V.divergence_integral_exact(B, mu5), rel=1e-9)


def test_divergence_integral_small_mu5_limit():
    # the exact parabola gives 4 pi B (B - 1) mu5 / sqrt(2c - b^2), which tends to
    # twice the stated leading term 2 B^(3/2) (B - 1) pi mu5
    for mu5 in (1e-2, 1e-3, 1e-4):
        ratio = V.divergence_integral(1.5, mu5) / V.divergence_reference(1.5, mu5)
        assert ratio == pytest.approx(2.0, abs=10 * mu5**2 + 1e-9)


def test_gauss_2f1_examples():
    assert V.gauss_2f1(0.3, -1.7, 2.2, 0.0) == 1.0
    assert V.gauss_2f1(1, 2.5, 2.5, 0.25) == pytest.approx(4 / 3, rel=1e-14)
    B = 0.9
    b = (5 - 8 * B) / (2 * (1 - 2 * B))
    assert V.hyp2f1_series(0.5, b, 1.5, 0.3) == pytest.approx(hyp2f1(0.5, b, 1.5, 0.3), rel=1e-12)
    s, c = V.hyp2f1_series(0.5, b, 1.5, 0.55), V.hyp2f1_connection(0.5, b, 1.5, 0.55)
    assert abs(s - c) <= 1e-9


def test_connection_pole_guard():
    with pytest.raises(PoleError):
        V.hyp2f1_connection(0.5, 1.0, 2.5, 0.7)


@settings(max_examples=60, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(0.3, 3), st.floats(-0.95, 0.95))
def test_gauss_2f1_vs_scipy(a, b, c, z):
    if abs((c - a - b) - round(c - a - b)) < 1e-3:
        return
    ref = hyp2f1(a, b, c, z)
    assert V.gauss_2f1(a, b, c, z) == pytest.approx(ref, rel=1e-8, abs=1e-10)


def test_i3_examples():
    qv, cv, diff = V.i3_compare(0.75, 1.0, 0.5)
    k = V.i3_prefactor(0.75, 1.0, 0.5)
    assert qv == pytest.approx(k * -2 * (0.75 - math.log(2.5 / 1.5)), abs=1e-8)
    assert diff <= 1e-8
    assert V.i3_compare(0.9, 0.0, 0.6)[0] == 0
    assert V.i3_compare(0.9, 1.0, 0.6)[2] < 1e-7
    with pytest.raises(DomainError):
        V.i3_compare(1.5, 1.0, 1.3)


@pytest.mark.parametrize("B,x0", [(0.6, 1.0), (1.5, 0.5), (1.5, 0.9), (0.6, 2.5), (2.0, 0.3)])
def test_i3_branches(B, x0):
    assert V.i3_compare(B, 0.7, x0)[2] <= 1e-7


def test_s_second_derivative_linear_in_mu3():
    assert V.s_second_derivative(0.6, 0.0, 0.5) == 0
    a, b = V.s_second_derivative(0.6, 1e-2, 0.5), V.s_second_derivative(0.6, 2e-2, 0.5)
    assert a / b == pytest.approx(0.5, abs=1e-6)


def test_s_second_derivative_jordan_case():
    assert V.section_slope(0.75, 0.3) == 0.0
    a, b = V.s_second_derivative(0.75, 1e-2, 0.2), V.s_second_derivative(0.75, 2e-2, 0.2)
    assert a / b == pytest.approx(0.5, abs=1e-6)
    total, i12, i3 = V.s_second_derivative(0.75, 1e-2, 0.2, parts=True)
    assert i12 == 0.0 and total == i3


def test_s_second_derivative_i3_part_matches_closed_form():
    # the nested integral reduces to the I3 prefactor times the closed form
    for B, x0 in ((0.6, 0.5), (0.9, 0.6), (1.5, 0.5)):
        _, _, i3 = V.s_second_derivative(B, 0.1, x0, parts=True)
        assert i3 == pytest.approx(V.i3_compare(B, 0.1, x0)[1], rel=1e-8)


def test_integrals_report_records():
    recs = V.integrals_report(np.random.default_rng(0))
    names = [r["name"] for r in recs]
    assert len(names) == len(set(names))
    for r in recs:
        assert {"name", "computed", "reference", "tolerance", "pass"} <= r.keys()
