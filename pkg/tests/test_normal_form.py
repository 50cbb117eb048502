import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcyc.errors import DegreeOverflow, ParamError
from nilcyc.normal_form import (
    CoordinateChange,
    QuasiLinearField3,
    SigmaClass,
    field_from_dict,
    field_to_dict,
    inverse_change,
    max_nonresonant,
    normalize,
    push_forward,
    random_field,
    resonance_divisor,
    resonance_set,
    triples,
)

IRR = SigmaClass.irrational(1.41421356)
ONE = SigmaClass.integer(1)
HALF = SigmaClass.rational(1, 2)


def test_resonance_divisor_examples():
    assert resonance_divisor(0, 1, 0, ONE) == 0
    assert resonance_divisor(1, 0, 2, ONE) == 0
    assert resonance_divisor(2, 2, 1, IRR) == 0
    assert resonance_divisor(2, 0, 0, IRR) != 0


def test_resonance_set_irrational():
    assert set(resonance_set(IRR, 5)) == {(1, 1, 1), (2, 2, 1)}


def test_resonance_set_integer_one():
    # brute force over i + j + l <= 3; (1, 2, 0) = nu v is resonant as well
    brute = {t for t in triples(3, 1) if resonance_divisor(*t, ONE) == 0 and t != (0, 0, 1)}
    assert set(resonance_set(ONE, 3)) == brute
    assert {(1, 1, 1), (0, 1, 0), (1, 0, 2), (1, 2, 0)} == brute


def test_resonance_set_rational_half():
    assert (1, 0, 3) in resonance_set(HALF, 4)
    assert all(l > 0 for _, _, l in resonance_set(HALF, 4))


def test_field_invariants():
    with pytest.raises(ParamError):
        QuasiLinearField3(1.0, ONE, {(0, 0, 1): 1.0})
    with pytest.raises(ParamError):
        CoordinateChange({(1, 0, 0): 1.0}, 4)
    with pytest.raises(DegreeOverflow):
        normalize(QuasiLinearField3(1.0, ONE, {(2, 0, 0): 1.0}), 99)


def test_normal_form_input_is_fixed():
    X = QuasiLinearField3(1.41421356, IRR, {(1, 1, 1): 0.3, (2, 2, 1): -0.1})
    nf, change = normalize(X, 6)
    assert not change.coeffs
    assert nf.phi == {1: pytest.approx(-0.3), 2: pytest.approx(0.1)}


def test_u_squared_removed():
    X = QuasiLinearField3(1.41421356, IRR, {(2, 0, 0): 1.0})
    nf, change = normalize(X, 6)
    # homological divisor for u^2 is 2 - 0 + sigma
    assert change.coeffs == {(2, 0, 0): pytest.approx(1 / (2 + 1.41421356))}
    assert abs(push_forward(X, change).F.get((2, 0, 0), 0.0)) < 1e-12
    assert not any(nf.phi.values()) and not nf.Phi and not nf.eta


def test_resonant_uvy_feeds_phi():
    # Y' = -sigma Y + c nu Y, so -(sigma + phi) has phi_1 = -c
    X = QuasiLinearField3(1.0, ONE, {(1, 1, 1): 0.25})
    nf, change = normalize(X, 6)
    assert nf.phi[1] == pytest.approx(-0.25)
    assert push_forward(X, change).F[(1, 1, 1)] == pytest.approx(0.25)


def test_identity_push_forward():
    X = random_field(np.random.default_rng(0), ONE, 5)
    Y = push_forward(X, CoordinateChange.identity(5))
    assert Y.F.keys() == X.F.keys()
    assert all(Y.F[k] == pytest.approx(X.F[k], abs=1e-14) for k in X.F)


def test_inverse_change_round_trip():
    X = random_field(np.random.default_rng(1), HALF, 6, 0.01)
    _, change = normalize(X, 6)
    back = push_forward(push_forward(X, change), inverse_change(change))
    for k in set(X.F) | set(back.F):
        assert back.F.get(k, 0.0) == pytest.approx(X.F.get(k, 0.0), abs=1e-10)


def test_round_trip_dict():
    X = random_field(np.random.default_rng(2), HALF, 4)
    assert field_from_dict(field_to_dict(X)) == X


@pytest.mark.parametrize("sigma0", [IRR, ONE, SigmaClass.integer(2), HALF, SigmaClass.rational(2, 3)])
def test_random_fields_normalized(sigma0):
    rng = np.random.default_rng(7)
    for _ in range(5):
        X = random_field(rng, sigma0, 6, float(rng.uniform(-0.05, 0.05)))
        nf, change = normalize(X, 6)
        assert max_nonresonant(push_forward(X, change), 6) <= 1e-10
        if sigma0.kind != "Integer":
            assert not any(nf.eta.values())
        assert all(k >= 1 for _, k in nf.Phi)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([IRR, ONE, HALF]))
def test_normalize_property(seed, sigma0):
    rng = np.random.default_rng(seed)
    X = random_field(rng, sigma0, 5, float(rng.uniform(-0.05, 0.05)))
    _, change = normalize(X, 5)
    assert max_nonresonant(push_forward(X, change), 5) <= 1e-10
