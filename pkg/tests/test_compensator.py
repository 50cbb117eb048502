import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcyc import compensator as C

E = math.e


def test_kappa_values():
    assert C.kappa(0) == pytest.approx(1.0, abs=1e-15)
    assert C.kappa(1) == pytest.approx(E - 1, rel=1e-14)
    assert C.kappa(-1) == pytest.approx(1 - 1 / E, rel=1e-14)


def test_kappa_prime_values():
    assert C.kappa_prime(0) == pytest.approx(0.5, abs=1e-15)
    assert C.kappa_prime(1) == pytest.approx(1.0, rel=1e-14)
    for eta in (5.0, 20.0, 45.0):
        assert C.kappa_prime(eta) < C.kappa(eta) < math.exp(eta)


def test_calK_values():
    assert C.calK(0, 0) == pytest.approx(0.5, abs=1e-15)
    assert C.calK(1, 0) == pytest.approx(E - 2, rel=1e-13)
    assert C.calK(0.7, -1.3) == C.calK(-1.3, 0.7)


def test_theta_values():
    assert C.theta(2.5, 0) == 2.5
    assert C.theta(1, 1) == pytest.approx(E - 1, rel=1e-14)
    assert C.theta(2, -1) == pytest.approx(1 - math.exp(-2), rel=1e-14)


def test_omega_values():
    assert C.omega(math.exp(-2), 0) == pytest.approx(2.0, rel=1e-15)
    assert C.omega(1, 0.3) == 0.0
    assert C.omega(0.5, 0.1) == pytest.approx((0.5**-0.1 - 1) / 0.1, rel=1e-13)
    assert C.omega(0.5, 0.1) == pytest.approx(0.717735, abs=1e-6)


def test_omega_big_values():
    assert C.omega_big(math.exp(-1), 0, 0) == pytest.approx(0.5, rel=1e-14)
    assert C.omega_big(0.3, 0.02, -0.07) == C.omega_big(0.3, -0.07, 0.02)
    ref = (C.omega(0.3, 0.05) - C.omega(0.3, -0.05)) / 0.1
    assert C.omega_big(0.3, 0.05, -0.05) == pytest.approx(ref, rel=1e-12)


def test_evaluate_dispatch():
    assert C.evaluate("omega", xi=0.5, alpha=0.1) == C.omega(0.5, 0.1)
    with pytest.raises(KeyError):
        C.evaluate("nope", x=1.0)


def test_branch_switch_is_continuous():
    # values just on either side of the small-argument switch agree
    for eta in (1e-4, 1e-3, 1e-2, 0.1):
        for f in (C.kappa, C.kappa_prime, C.kappa_second):
            lo, hi = f(np.nextafter(eta, 0)), f(np.nextafter(eta, 1))
            assert abs(lo - hi) <= 1e-12 * max(1.0, abs(lo))


@settings(max_examples=200, deadline=None)
@given(st.floats(-50, 50))
def test_kappa_inequalities(eta):
    k, kp, kpp = C.kappa(eta), C.kappa_prime(eta), C.kappa_second(eta)
    assert k > 0 and kp > 0 and kpp > 0
    if eta > 0:
        assert kp <= k <= math.exp(eta)
    if eta > 1e-6:
        # strict once the gaps exceed rounding
        assert kp < k < math.exp(eta)


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-6, 1.0), st.floats(-2, 2))
def test_omega_is_theta_of_log(xi, alpha):
    assert C.omega(xi, alpha) == pytest.approx(C.theta(-math.log(xi), alpha), rel=1e-12, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-4, 0.999), st.floats(-1, 1), st.floats(-1, 1))
def test_omega_big_symmetric_and_finite(xi, a, b):
    v = C.omega_big(xi, a, b)
    assert math.isfinite(v)
    assert v == pytest.approx(C.omega_big(xi, b, a), rel=1e-12, abs=1e-15)
