"""Quadratic families with a nilpotent point at infinity and the blow-up of the family.

Fields are exact sympy polynomials.  Float inputs are converted to rationals
through their decimal repr, so 0.1 becomes 1/10 and identities such as
invariance of a curve are checked coefficient by coefficient.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import sympy as sp
from scipy.integrate import solve_ivp

from .errors import DegenerateA, DomainError, ParamError

log = logging.getLogger(__name__)

VARIANTS = ("Inf", "Unfold", "UnfoldB1", "UnfoldBis")


def q(x):
    """Exact rational for a float, passthrough for sympy objects."""
    if isinstance(x, sp.Basic):
        return x
    if isinstance(x, (int, np.integer)):
        return sp.Integer(int(x))
    return sp.Rational(repr(float(x)))


@dataclass(frozen=True)
class PlanarField:
    """Polynomial vector field (P, Q) in the variables named by `names`."""

    P: sp.Expr
    Q: sp.Expr
    names: tuple = ("x", "y")

    @property
    def symbols(self):
        return sp.symbols(self.names)

    @cached_property
    def _num(self):
        s = self.symbols
        return sp.lambdify(s, [self.P, self.Q], "numpy")

    @cached_property
    def _jac(self):
        s = self.symbols
        J = sp.Matrix([self.P, self.Q]).jacobian(s)
        return sp.lambdify(s, J, "numpy")

    def __call__(self, u, v):
        a, b = self._num(u, v)
        return np.broadcast_to(a, np.shape(u)) * 1.0, np.broadcast_to(b, np.shape(v)) * 1.0

    def jacobian(self, u, v) -> np.ndarray:
        return np.array(self._jac(u, v), dtype=float)

    def divergence(self) -> sp.Expr:
        s = self.symbols
        return sp.expand(sp.diff(self.P, s[0]) + sp.diff(self.Q, s[1]))

    @property
    def degree(self) -> int:
        s = self.symbols
        return max(sp.Poly(self.P, *s).total_degree(), sp.Poly(self.Q, *s).total_degree())

    def coeff(self, comp: int, i: int, j: int):
        s = self.symbols
        e = self.P if comp == 0 else self.Q
        return sp.Poly(e, *s).coeff_monomial(s[0] ** i * s[1] ** j)

    def same_as(self, other: "PlanarField") -> bool:
        return sp.expand(self.P - other.P) == 0 and sp.expand(self.Q - other.Q) == 0

    def __str__(self):
        u, v = self.names
        return f"d{u}/dt = {sp.expand(self.P)}\nd{v}/dt = {sp.expand(self.Q)}"


@dataclass(frozen=True)
class QuadraticFamily:
    """Unfoldings of x' = -y + B x^2, y' = x + x y.  mu = (mu0, mu2, mu3, mu4, mu5).

    B is the effective x^2 coefficient (B0 + mu0 already applied), except in
    UnfoldB1 where the x^2 coefficient is 1 + mu0.
    """

    B: float
    mu: tuple = (0.0, 0.0, 0.0, 0.0, 0.0)
    variant: str = "Unfold"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ParamError(f"unknown variant {self.variant!r}")
        if len(self.mu) != 5:
            raise ParamError("mu must have five entries (mu0, mu2, mu3, mu4, mu5)")
        object.__setattr__(self, "mu", tuple(self.mu))
        if self.variant == "Inf" and any(m != 0 for m in self.mu):
            raise ParamError("variant Inf has no unfolding parameters")
        if self.variant == "UnfoldB1" and abs(float(self.B) - 1.0) > 0.1:
            log.warning("UnfoldB1 is meant for B near 1, got B=%s", self.B)

    def to_dict(self) -> dict:
        return {"variant": self.variant, "B": float(self.B), "mu": [float(m) for m in self.mu]}

    @classmethod
    def from_dict(cls, d: dict) -> "QuadraticFamily":
        return cls(float(d["B"]), tuple(float(m) for m in d.get("mu", [0.0] * 5)), d.get("variant", "Unfold"))


@dataclass(frozen=True)
class BlownUpParams:
    nu: float
    mu_bar: tuple
    a: float

    def __post_init__(self):
        if self.nu < 0:
            raise ParamError("nu must be nonnegative")
        _check_sphere(self.mu_bar)

    @classmethod
    def from_family(cls, nu: float, mu_bar, B: float) -> "BlownUpParams":
        return cls(nu, tuple(mu_bar), 1.0 - B)


@dataclass(frozen=True)
class SingularPointInfo:
    label: str
    location: tuple
    eigenvalues: tuple
    chart: str = ""
    names: tuple = field(default=("r", "rho", "ybar"))


def _check_sphere(mu_bar):
    if len(mu_bar) != 3 or abs(sum(float(m) ** 2 for m in mu_bar) - 1.0) > 1e-9:
        raise ParamError("mu_bar must lie on the unit sphere")


X, Y = sp.symbols("x y")
V, W = sp.symbols("v w")


def vector_field(fam: QuadraticFamily) -> PlanarField:
    B = q(fam.B)
    m0, m2, m3, m4, m5 = (q(m) for m in fam.mu)
    if fam.variant == "Inf":
        P, Q = -Y + B * X**2, X + X * Y
    elif fam.variant == "Unfold":
        P = -Y + B * X**2 + m2 * Y**2 + (m4 + B * m5) * X
        Q = X + X * Y + m3 * Y**2 + (1 - 2 * B) * m5 * Y
    elif fam.variant == "UnfoldB1":
        P = -Y + (1 + m0) * X**2 + m2 * Y**2 + m5 * X
        Q = X + (m4 + m5) * X**2 + X * Y + m3 * Y**2
    else:
        P = -Y + B * X**2 + m2 * Y**2 + m5 * X
        Q = X + X * Y + m3 * Y**2 + m4 * Y
    return PlanarField(sp.expand(P), sp.expand(Q), ("x", "y"))


def localize_at_infinity(fam: QuadraticFamily) -> PlanarField:
    """Chart (v, w) = (-x/y, 1/y) at the nilpotent point, multiplied by w."""
    if fam.variant != "Unfold":
        raise ParamError("localization is implemented for the Unfold variant")
    F = vector_field(fam)
    sub = {X: -V / W, Y: 1 / W}
    xd, yd = F.P.subs(sub), F.Q.subs(sub)
    # v = -x/y, w = 1/y
    vd = -(xd * (1 / W) - (-V / W) * yd) * W**2
    wd = -yd * W**2
    return PlanarField(sp.expand(sp.cancel(vd * W)), sp.expand(sp.cancel(wd * W)), ("v", "w"))


def localized_reference(fam: QuadraticFamily) -> PlanarField:
    """The (v, w) field written out term by term."""
    B = q(fam.B)
    _, m2, m3, m4, m5 = (q(m) for m in fam.mu)
    P = W + (1 - B) * V**2 - m2 - m3 * V + V * W * ((3 * B - 1) * m5 + m4) + V**2 * W
    Q = V * W - m3 * W - (1 - 2 * B) * m5 * W**2 + V * W**2
    return PlanarField(sp.expand(P), sp.expand(Q), ("v", "w"))


def divergence_on_equator(fam: QuadraticFamily) -> sp.Expr:
    return sp.expand(localize_at_infinity(fam).divergence().subs(W, 0))


def family_rescaling_field(mu_bar, a) -> PlanarField:
    _check_sphere(mu_bar)
    m1, m2, m3 = (q(m) for m in mu_bar)
    xb, yb = sp.symbols("xbar ybar")
    P = yb + q(a) * xb**2 + m2
    Q = m1 + m3 * yb + xb * yb
    return PlanarField(sp.expand(P), sp.expand(Q), ("xbar", "ybar"))


# Blow-up (x, y, nu) = (r xbar, r^2 ybar, r rho) of the truncated family
# x' = y + a x^2 + mu2, y' = mu1 + mu3 y + x y + eta x^2 y.

R, RHO, XB, YB = sp.symbols("r rho xbar ybar")
CHARTS = ("xbar=1", "xbar=-1", "ybar=1")


def _family_rhs(a, mu_bar, eta, x, y, nu):
    m1, m2, m3 = mu_bar
    xd = y + a * x**2 + nu**2 * m2
    yd = nu**3 * m1 + nu * m3 * y + x * y + eta * x**2 * y
    return xd, yd


@dataclass(frozen=True)
class ChartField:
    """Blown-up 3-D field on one chart, already divided by r."""

    chart: str
    components: tuple
    names: tuple

    @property
    def symbols(self):
        return sp.symbols(self.names)

    @cached_property
    def _jac(self):
        s = self.symbols
        return sp.lambdify(s, sp.Matrix(self.components).jacobian(s), "numpy")

    def jacobian(self, point) -> np.ndarray:
        return np.array(self._jac(*point), dtype=float)

    def foliation_defect(self) -> sp.Expr:
        """Derivative of r rho along the field, expanded."""
        r_d, rho_d = self.components[0], self.components[1]
        return sp.expand(r_d * RHO + R * rho_d)


def blown_up_chart(chart: str, a, mu_bar=(0, 0, 1), eta=0) -> ChartField:
    if chart not in CHARTS:
        raise ParamError(f"unknown chart {chart!r}")
    a, eta = q(a), q(eta)
    mb = tuple(q(m) for m in mu_bar)
    nu = R * RHO
    if chart in ("xbar=1", "xbar=-1"):
        s = 1 if chart == "xbar=1" else -1
        xd, yd = _family_rhs(a, mb, eta, s * R, R**2 * YB, nu)
        rd = s * xd
        comps = (rd, -RHO * rd / R, (yd - 2 * R * rd * YB) / R**2)
        names = ("r", "rho", "ybar")
    else:
        xd, yd = _family_rhs(a, mb, eta, R * XB, R**2, nu)
        rd = yd / (2 * R)
        comps = (rd, -RHO * rd / R, (xd - XB * rd) / R)
        names = ("r", "rho", "xbar")
    comps = tuple(sp.expand(sp.cancel(c / R)) for c in comps)
    return ChartField(chart, comps, names)


def eigenvalue_table(a) -> dict:
    a = float(a)
    return {
        "P1": (-a, a, -(1 - 2 * a)),
        "P2": (a, -a, 1 - 2 * a),
        "P3": (0.5, -0.5, -(1 - 2 * a)),
        "P4": (-0.5, 0.5, 1 - 2 * a),
    }


def sigma_ratio(label: str, a: float) -> float:
    """Hyperbolicity ratio used for the Dulac map at P_i."""
    if label in ("P3", "P4"):
        return 2.0 * (1.0 - 2.0 * a)
    return (2.0 * a - 1.0) / a


def singular_points_on_blowup(a, mu_bar=(0, 0, 1), eta=0) -> list:
    """P1..P4 on r = rho = 0 with eigenvalues from numeric Jacobians, ordered (r, rho, ybar)."""
    if abs(float(a) - 0.5) < 1e-12:
        raise DegenerateA("a = 1/2: the singular points coalesce in pairs")
    yb = (1.0 - 2.0 * float(a)) / 2.0
    where = {"P1": ("xbar=-1", 0.0), "P2": ("xbar=1", 0.0), "P3": ("xbar=1", yb), "P4": ("xbar=-1", yb)}
    charts = {c: blown_up_chart(c, a, mu_bar, eta) for c in ("xbar=1", "xbar=-1")}
    out = []
    for label, (chart, y0) in where.items():
        loc = (0.0, 0.0, y0)
        J = charts[chart].jacobian(loc)
        ev = np.linalg.eigvals(J)
        diag = np.diag(J)
        # J is triangular at r = rho = 0, so the diagonal lists eigenvalues by direction
        if np.max(np.abs(np.sort_complex(ev) - np.sort_complex(diag.astype(complex)))) > 1e-9:
            raise DomainError(f"Jacobian at {label} is not triangular")
        out.append(SingularPointInfo(label, loc, tuple(float(d) for d in diag), chart))
    return out


def invariant_parabola(B, mu5, as_printed: bool = False) -> tuple:
    """Coefficients (c2, c1, c0) of y = c2 x^2 + c1 x + c0.

    The exact constant term is -1/(2B) + (2B-1) mu5^2 / 2; `as_printed`
    returns the variant with (2B-1) mu5^2, invariant only up to O(mu5^2).
    """
    B, m5 = q(B), q(mu5)
    if B == 0:
        raise DomainError("B must be nonzero")
    k = 1 if as_printed else sp.Rational(1, 2)
    return ((2 * B - 1) / 2, (2 * B - 1) * m5, -1 / (2 * B) + k * (2 * B - 1) * m5**2)


def parabola_defect(fam: QuadraticFamily, coeffs) -> sp.Poly:
    """(y - p(x))' restricted to y = p(x), as a polynomial in x."""
    F = vector_field(fam)
    p = coeffs[0] * X**2 + coeffs[1] * X + coeffs[2]
    d = (F.Q - sp.diff(p, X) * F.P).subs(Y, p)
    return sp.Poly(sp.expand(d), X)


def tangency_defect(fam: QuadraticFamily, coeffs, xs) -> np.ndarray:
    poly = parabola_defect(fam, coeffs)
    f = sp.lambdify(X, poly.as_expr(), "numpy")
    return np.broadcast_to(np.asarray(f(np.asarray(xs, dtype=float)), dtype=float), np.shape(xs)).copy()


def is_identically_zero(poly: sp.Poly) -> bool:
    return all(c == 0 for c in poly.all_coeffs())


def invariant_line_residual(fam: QuadraticFamily) -> float:
    if fam.variant != "Unfold":
        raise ParamError("the invariant line check applies to the Unfold variant")
    _, _, m3, _, m5 = fam.mu
    return float(q(m3) - (1 - 2 * q(fam.B)) * q(m5))


def line_defect(fam: QuadraticFamily) -> sp.Poly:
    """y' on the line y = -1, as a polynomial in x."""
    return sp.Poly(sp.expand(vector_field(fam).Q.subs(Y, -1)), X)


def graphic_label(B: float):
    if B > 1:
        return "I^1_14"
    if B == 1:
        return "DI_2b"
    if 0.5 < B < 1:
        return "I^1_6b"
    if 0 < B < 0.5:
        return "H^3_13"
    if B == 0:
        return "H^3_14"
    return None


def integrability_residuals(fam: QuadraticFamily):
    """(mu3, mu4, mu5) and, when all vanish, the label of the graphic with return map."""
    if fam.variant not in ("Unfold", "UnfoldB1"):
        raise ParamError("integrability residuals apply to Unfold and UnfoldB1")
    res = (float(fam.mu[2]), float(fam.mu[3]), float(fam.mu[4]))
    B = float(fam.B) if fam.variant == "Unfold" else 1.0 + float(fam.mu[0])
    label = graphic_label(B) if all(r == 0 for r in res) else None
    return res, label


def restricted_rho_xbar_field(B, mu_bar2, mu_bar3) -> PlanarField:
    if float(B) <= 0.5:
        raise DomainError("the restricted field needs B > 1/2")
    B, m2, m3 = q(B), q(mu_bar2), q(mu_bar3)
    P = -RHO * (XB - m3 * RHO)
    Q = 2 + (1 - 2 * B) * XB**2 - 2 * m2 * RHO**2 - m3 * XB * RHO
    return PlanarField(sp.expand(P), sp.expand(Q), ("rho", "xbar"))


def beta(B: float) -> float:
    if B <= 0.5:
        raise DomainError("beta needs B > 1/2")
    return math.sqrt(2.0 / (2.0 * B - 1.0))


def portrait(field: PlanarField, initial, t_max: float = 10.0, n: int = 201, escape: float = 1e3) -> list:
    """Trajectories as arrays of rows (t, u, v), stopped when |state| exceeds `escape`."""

    def rhs(t, s):
        a, b = field(s[0], s[1])
        return [float(a), float(b)]

    def blow(t, s):
        return escape - math.hypot(s[0], s[1])

    blow.terminal = True
    out = []
    for u0, v0 in initial:
        for sgn in (1.0, -1.0):
            sol = solve_ivp(
                lambda t, s: [sgn * c for c in rhs(t, s)],
                (0.0, t_max),
                [float(u0), float(v0)],
                method="DOP853",
                rtol=1e-10,
                atol=1e-12,
                dense_output=True,
                events=blow,
            )
            t_end = sol.t[-1]
            ts = np.linspace(0.0, t_end, n)
            ys = sol.sol(ts)
            out.append(np.column_stack([sgn * ts, ys[0], ys[1]]))
    return out


__all__ = [
    "PlanarField",
    "QuadraticFamily",
    "BlownUpParams",
    "SingularPointInfo",
    "ChartField",
    "VARIANTS",
    "CHARTS",
    "vector_field",
    "localize_at_infinity",
    "localized_reference",
    "divergence_on_equator",
    "family_rescaling_field",
    "blown_up_chart",
    "eigenvalue_table",
    "sigma_ratio",
    "singular_points_on_blowup",
    "invariant_parabola",
    "parabola_defect",
    "tangency_defect",
    "is_identically_zero",
    "invariant_line_residual",
    "line_defect",
    "graphic_label",
    "integrability_residuals",
    "restricted_rho_xbar_field",
    "beta",
    "portrait",
]
