"""Numeric checks of the integrals behind the center-ideal coefficients.

Infinite integrals go through x = tan(theta).  Truncated symmetric integrals
are extrapolated in 1/X0 (Richardson, Neville tableau).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, PoleError, QuadratureFailure

QUAD_EPS = 1e-13
SERIES_MAX_TERMS = 20_000


@dataclass(frozen=True)
class QuadratureSpec:
    name: str
    lo: float
    hi: float
    epsabs: float = 1e-13
    epsrel: float = 1e-13

    def __post_init__(self):
        if self.epsabs < 1e-14 and self.epsrel < 1e-14:
            raise ValueError("tolerance must be at least 1e-14")


@dataclass(frozen=True)
class HypergeometricArgs:
    a: float
    b: float
    c: float
    z: float


def _quad(f, lo, hi, tol=QUAD_EPS, points=None):
    val, err = quad(f, lo, hi, epsabs=tol, epsrel=tol, limit=500, points=points)
    if not math.isfinite(val) or err > max(1e-8, 1e-8 * abs(val)):
        raise QuadratureFailure(f"quadrature error estimate {err:.3g} too large (value {val:.6g})")
    return val


def _quad_real_line(f, tol=QUAD_EPS):
    """Integral of f over the real line through x = tan(theta)."""

    def g(th):
        c = math.cos(th)
        if c == 0.0:
            return 0.0
        return f(math.tan(th)) / (c * c)

    h = math.pi / 2
    return _quad(g, -h, 0.0, tol) + _quad(g, 0.0, h, tol)


def melnikov_parabola(mu4: float) -> float:
    """Integral of 8 mu4 x^2/(1+x^2)^3 over the real line, which is pi mu4."""
    if mu4 == 0:
        return 0.0
    return _quad_real_line(lambda x: 8.0 * mu4 * x * x / (1.0 + x * x) ** 3)


def _neville(hs, vals):
    """Polynomial extrapolation of vals(h) to h = 0."""
    T = list(vals)
    n = len(hs)
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            T[i] = T[i] + (T[i] - T[i - 1]) * hs[i] / (hs[i - k] - hs[i])
    return T[-1]


def parabola_divergence_integrand(B: float, mu5: float):
    """div dt along the exact invariant parabola, as a function of x."""
    c2 = (2 * B - 1) / 2
    c1 = (2 * B - 1) * mu5
    c0 = -1 / (2 * B) + (2 * B - 1) * mu5**2 / 2

    def f(x):
        y = c2 * x * x + c1 * x + c0
        return ((2 * B + 1) * x + (1 - B) * mu5) / (-y + B * x * x + B * mu5 * x)

    return f


def divergence_integral(B: float, mu5: float, variant: str = "General", X0s=(400.0, 800.0, 1600.0, 3200.0)) -> float:
    if variant == "B1":
        if mu5 == 0:
            return 0.0
        return _quad_real_line(lambda x: 2.0 * mu5 / (x * x + 1.0))
    if variant != "General":
        raise DomainError(f"unknown variant {variant!r}")
    if B <= 0.5:
        raise DomainError("the General divergence integral needs B > 1/2")
    f = parabola_divergence_integrand(B, mu5)
    vals = []
    for X0 in X0s:
        vals.append(_quad(f, -X0, -1.0) + _quad(f, -1.0, 1.0, points=[0.0]) + _quad(f, 1.0, X0))
    return float(_neville([1.0 / X for X in X0s], vals))


def divergence_integral_exact(B: float, mu5: float) -> float:
    """Closed form of the General integral along the exact parabola.

    The denominator is x^2/2 + b x + c with b = (1-B) mu5, and the odd part
    contributes -(2B+1) b times the even integral.
    """
    b = (1 - B) * mu5
    c = 1 / (2 * B) - (2 * B - 1) * mu5**2 / 2
    disc = 2 * c - b * b
    if disc <= 0:
        raise DomainError("the parabola meets the x-nullcline")
    return (1 - B) * mu5 * (1 - (2 * B + 1)) * 2 * math.pi / math.sqrt(disc)


def divergence_reference(B: float, mu5: float) -> float:
    return 2 * B**1.5 * (B - 1) * math.pi * mu5


# Gauss hypergeometric function


def _is_nonpos_int(x: float) -> bool:
    return x <= 0 and abs(x - round(x)) < 1e-12


def _rgamma(x: float) -> float:
    return 0.0 if _is_nonpos_int(x) else 1.0 / math.gamma(x)


def _gamma(x: float) -> float:
    if _is_nonpos_int(x):
        raise PoleError(f"Gamma has a pole at {x}")
    return math.gamma(x)


def hyp2f1_series(a: float, b: float, c: float, z: float) -> float:
    if _is_nonpos_int(c):
        raise PoleError(f"c = {c} is a non-positive integer")
    if abs(z) >= 1:
        raise DomainError("the series needs |z| < 1")
    term, total = 1.0, 1.0
    for n in range(SERIES_MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if term == 0.0 or (abs(term) < 1e-17 * abs(total) and n > 2):
            return total
    raise QuadratureFailure("hypergeometric series did not converge")


def hyp2f1_connection(a: float, b: float, c: float, z: float) -> float:
    """Value through the z -> 1 - z connection formula, both terms kept."""
    if not 0 < z < 1:
        raise DomainError("the connection formula is used on (0, 1)")
    s = c - a - b
    if abs(s - round(s)) < 1e-12:
        raise PoleError(f"c - a - b = {s} is an integer")
    w = 1.0 - z
    t1 = _gamma(c) * _gamma(s) * _rgamma(c - a) * _rgamma(c - b) * hyp2f1_series(a, b, a + b - c + 1, w)
    t2 = w**s * _gamma(c) * _gamma(-s) * _rgamma(a) * _rgamma(b) * hyp2f1_series(c - a, c - b, s + 1, w)
    return t1 + t2


def gauss_2f1(a: float, b: float, c: float, z: float) -> float:
    if _is_nonpos_int(c):
        raise PoleError(f"c = {c} is a non-positive integer")
    if z == 0:
        return 1.0
    if not -1 < z < 1:
        raise DomainError("z must lie in (-1, 1)")
    if abs(z) <= 0.5:
        return hyp2f1_series(a, b, c, z)
    if z > 0:
        return hyp2f1_connection(a, b, c, z)
    # Pfaff maps (-1, -1/2) into (1/3, 1/2)
    return (1 - z) ** (-a) * hyp2f1_series(a, c - b, c, z / (z - 1))


# The I3 term and S''(0)


def _i3_exponent(B: float) -> float:
    return (8 * B - 5) / (2 * (1 - 2 * B))


def _i3_check(B: float, x0: float):
    if B <= 0.5:
        raise DomainError("needs B > 1/2")
    edge = 2.0 / (2 * B - 1)
    if x0 * x0 >= edge * (1 - 1e-9):
        raise DomainError("x0 is at or beyond the singular point beta")


def i3_prefactor(B: float, mu_bar3: float, x0: float) -> float:
    return 4 * mu_bar3 * (2 + (1 - 2 * B) * x0 * x0) ** (1 / (2 * (1 - 2 * B)))


def i3_integral_quad(B: float, x0: float) -> float:
    """Integral from x0 to -x0 of (1 - B x^2)(2 + (1-2B) x^2)^e."""
    _i3_check(B, x0)
    e = _i3_exponent(B)
    return -_quad(lambda x: (1 - B * x * x) * (2 + (1 - 2 * B) * x * x) ** e, -x0, x0)


def i3_integral_closed(B: float, x0: float) -> float:
    _i3_check(B, x0)
    if abs(B - 0.75) < 1e-12:
        return -2 * (1.5 * x0 - math.log((2 + x0) / (2 - x0)))
    b = (5 - 8 * B) / (2 * (1 - 2 * B))
    z = (2 * B - 1) * x0 * x0 / 2
    pre = (2.0 / 3.0) * 2 ** ((5 - 8 * B) / (2 * (2 * B - 1))) * x0
    return pre * (-3 * gauss_2f1(0.5, b, 1.5, z) + B * x0 * x0 * gauss_2f1(1.5, b, 2.5, z))


def i3_compare(B: float, mu_bar3: float, x0: float):
    k = i3_prefactor(B, mu_bar3, x0)
    qv = k * i3_integral_quad(B, x0)
    cv = k * i3_integral_closed(B, x0)
    return qv, cv, abs(qv - cv)


def section_slope(B: float, mu_bar3: float) -> float:
    """f_i'(0) at leading order; zero in the Jordan case B = 3/4."""
    if abs(B - 0.75) < 1e-12:
        return 0.0
    return mu_bar3 / (3 - 4 * B)


def s_second_derivative(B: float, mu_bar3: float, x0: float, parts: bool = False):
    """S''(0) = 2 I1 + 2 I2 + I3 with S'(0) = 1, f3(0) = x0, f4(0) = -x0."""
    _i3_check(B, x0)
    k = 1 - 2 * B

    def Q(x):
        return 2 + k * x * x

    def P_r(x):
        return -x

    P_rr = 2 * mu_bar3

    def Q_r(x):
        return -mu_bar3 * x

    fp = section_slope(B, mu_bar3)
    f3, f4 = x0, -x0
    i12 = 2 * (fp * P_r(f4) / Q(f4) - fp * P_r(f3) / Q(f3))

    def inner(xb):
        return _quad(lambda x: P_r(x) / Q(x), f3, xb)

    def outer(xb):
        return (P_rr / Q(xb) - 2 * P_r(xb) * Q_r(xb) / Q(xb) ** 2) * math.exp(inner(xb))

    i3 = -_quad(outer, f4, f3, tol=1e-12) if mu_bar3 != 0 else 0.0
    total = i12 + i3
    if parts:
        return total, i12, i3
    return total


# Report


def _rec(name, computed, reference, tol, ok=None):
    if ok is None:
        ok = abs(computed - reference) <= tol
    return {"name": name, "computed": computed, "reference": reference, "tolerance": tol, "pass": bool(ok)}


def integrals_report(rng: np.random.Generator | None = None) -> list:
    rng = rng if rng is not None else np.random.default_rng(0)
    out = [
        _rec("melnikov_parabola(1)", melnikov_parabola(1.0), math.pi, 1e-8),
        _rec("divergence_integral B1 mu5=0.1", divergence_integral(1.0, 0.1, "B1"), 0.2 * math.pi, 1e-6),
    ]
    B = 1.5
    devs = []
    for mu5 in (1e-2, 1e-3):
        val = divergence_integral(B, mu5)
        devs.append(abs(val / divergence_reference(B, mu5) - 1))
        out.append(_rec(f"divergence_integral General vs exact parabola B=1.5 mu5={mu5:g}", val,
                        divergence_integral_exact(B, mu5), 1e-9 * abs(val) + 1e-12))
    out.append(
        _rec("divergence ratio deviation shrink factor per decade", devs[0] / max(devs[1], 1e-300), 5.0, 0.0,
             ok=devs[0] >= 5 * devs[1])
    )
    worst = 0.0
    for _ in range(20):
        a, b, c = rng.uniform(0.1, 2.0, 3)
        if abs((c - a - b) - round(c - a - b)) < 1e-3:
            c += 0.1
        for z in np.linspace(0.45, 0.55, 5):
            s = hyp2f1_series(a, b, c, z)
            w = hyp2f1_connection(a, b, c, z)
            worst = max(worst, abs(s - w) / max(1.0, abs(s)))
    out.append(_rec("2F1 series vs connection on [0.45, 0.55]", worst, 0.0, 1e-9))
    for B_, x0 in ((0.9, 0.6), (0.6, 1.0), (1.5, 0.5), (1.5, 0.9), (0.6, 2.5), (0.75, 0.5)):
        qv, cv, d = i3_compare(B_, 1.0, x0)
        out.append(_rec(f"i3 quadrature vs closed B={B_} x0={x0}", qv, cv, 1e-7))
    s1 = s_second_derivative(0.6, 1e-2, 0.5)
    s2 = s_second_derivative(0.6, 2e-2, 0.5)
    out.append(_rec("S''(0) ratio mu3=1e-2 vs 2e-2 at B=0.6", s1 / s2, 0.5, 1e-6))
    out.append(_rec("S''(0) at mu3=0", s_second_derivative(0.6, 0.0, 0.5), 0.0, 1e-12))
    return out


__all__ = [
    "QuadratureSpec",
    "HypergeometricArgs",
    "melnikov_parabola",
    "divergence_integral",
    "divergence_integral_exact",
    "divergence_reference",
    "parabola_divergence_integrand",
    "hyp2f1_series",
    "hyp2f1_connection",
    "gauss_2f1",
    "i3_prefactor",
    "i3_integral_quad",
    "i3_integral_closed",
    "i3_compare",
    "section_slope",
    "s_second_derivative",
    "integrals_report",
]
