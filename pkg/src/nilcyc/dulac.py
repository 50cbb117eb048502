"""Dulac maps near a hyperbolic saddle of the normal form
r' = r, rho' = -rho, Y' = -sigma_bar Y + Phi(nu, r^p Y^q) Y + rho^p eta.

Closed forms take the smooth correction phi to be zero; its effect is only
visible through `integrate_transition`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .compensator import omega
from .errors import CompositionDomainError, DomainError, ParamError, StiffnessError
from .normal_form import SigmaClass

MAX_NFEV = 400_000
RTOL = 1e-13
ATOL_REL = 1e-16


@dataclass(frozen=True)
class DulacParams:
    """sigma_bar = sigma + phi(nu), alpha = sigma_bar - sigma0, nu0 = r0 rho0.

    Phi maps (j, k) to the coefficient of nu^j xi^k, k >= 1.
    """

    sigma_class: SigmaClass
    sigma_bar: float
    eta: float = 0.0
    r0: float = 1.0
    rho0: float = 1.0
    Y0: float = 1.0
    Phi: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.eta != 0.0 and self.sigma_class.kind != "Integer":
            raise ParamError("eta must vanish unless sigma0 is an integer")
        if self.r0 <= 0 or self.rho0 <= 0:
            raise ParamError("r0 and rho0 must be positive")
        if any(k < 1 for (_, k) in self.Phi):
            raise ParamError("Phi(nu, 0) must vanish: every term needs xi^k with k >= 1")

    @property
    def alpha(self) -> float:
        return self.sigma_bar - self.sigma_class.value

    @property
    def nu0(self) -> float:
        return self.r0 * self.rho0

    @property
    def p(self) -> int:
        return int(self.sigma_class.p) if self.sigma_class.p is not None else 0

    @property
    def q(self) -> int:
        return int(self.sigma_class.q) if self.sigma_class.q is not None else 1

    def phi_value(self, nu: float, xi: float) -> float:
        return sum(c * nu**j * xi**k for (j, k), c in self.Phi.items())

    def to_dict(self) -> dict:
        return {
            "sigma_class": self.sigma_class.to_dict(),
            "sigma_bar": self.sigma_bar,
            "eta": self.eta,
            "r0": self.r0,
            "rho0": self.rho0,
            "Y0": self.Y0,
            "Phi": [{"j": j, "k": k, "coeff": c} for (j, k), c in sorted(self.Phi.items())],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DulacParams":
        phi = {(int(t["j"]), int(t["k"])): float(t["coeff"]) for t in d.get("Phi", [])}
        return cls(
            SigmaClass.from_dict(d["sigma_class"]),
            float(d["sigma_bar"]),
            float(d.get("eta", 0.0)),
            float(d.get("r0", 1.0)),
            float(d.get("rho0", 1.0)),
            float(d.get("Y0", 1.0)),
            phi,
        )


@dataclass(frozen=True)
class TransitionSample:
    start: tuple
    nu: float
    Y: float
    method: str


def _closed(xi: float, Y: float, vp_eta: float, P: DulacParams) -> float:
    out = xi**P.sigma_bar * Y
    if vp_eta != 0.0:
        out += vp_eta * xi**P.sigma_bar * omega(xi, P.alpha)
    return out


def dulac_type_I(Ybar: float, nu: float, P: DulacParams) -> float:
    """From {rho = rho0} to {r = r0}, both parametrized by (Y, nu)."""
    if not nu > 0:
        raise DomainError("nu must be positive")
    if nu > P.nu0 * (1 + 1e-15):
        raise DomainError("nu must not exceed nu0 = r0 rho0")
    eta_term = P.eta * P.rho0**P.p if P.sigma_class.kind == "Integer" else 0.0
    return _closed(nu / P.nu0, Ybar, eta_term, P)


def dulac_type_II(r: float, rho: float, P: DulacParams) -> float:
    """From {Y = Y0} at (r, rho) to {r = r0}."""
    if not r > 0:
        raise DomainError("r must be positive")
    if r > P.r0 * (1 + 1e-15):
        raise DomainError("r must not exceed r0")
    eta_term = P.eta * rho**P.p if P.sigma_class.kind == "Integer" else 0.0
    return _closed(r / P.r0, P.Y0, eta_term, P)


def integrate_transition(P: DulacParams, u: float, v: float, Y: float, target: str = "r") -> float:
    """Flow (u, v, Y) until u = r0 (target "r") or v = rho0 (target "rho", backward time).

    Integrates Z = e^(sigma_bar t) Y, which solves
    Z' = Phi(nu, u^p e^(-q alpha t) Z^q) Z + e^(alpha t) v^p eta,
    and returns Y at the section crossing.
    """
    if not (u > 0 and v > 0):
        raise DomainError("start must lie strictly inside the quadrant")
    nu = u * v
    sb, alpha, p, q = P.sigma_bar, P.alpha, P.p, P.q
    # with a rational sigma0 the resonant monomial is u^p Y^q; otherwise Phi is absent
    up, vp_eta = u**p, (v**p * P.eta if P.sigma_class.kind == "Integer" else 0.0)
    has_phi = bool(P.Phi) and P.sigma_class.kind != "IrrationalLike"

    if target == "r":
        T = math.log(P.r0 / u)
        direction = 1.0
    elif target == "rho":
        T = math.log(P.rho0 / v)
        direction = -1.0
    else:
        raise ParamError("target must be 'r' or 'rho'")
    if T < 0:
        raise DomainError("start is already past the target section")

    def rhs(t, s):
        Z = s[0]
        dz = math.exp(alpha * t) * vp_eta
        if has_phi:
            xi = up * math.exp(-q * alpha * t) * Z**q
            dz += P.phi_value(nu, xi) * Z
        return [dz, direction]

    # s[1] = ln(u(t)/r0) forward, ln(v(t)/rho0) backward; both reach 0 on the section
    def section(t, s):
        return s[1]

    section.terminal = True
    span = (0.0, direction * (T * 1.01 + 1e-9))
    s0 = [float(Y), -T]
    scale = max(abs(Y), abs(vp_eta) * max(T, 1.0) * math.exp(abs(alpha) * T), 1e-300)
    atol = [ATOL_REL * scale, 1e-14]
    sol = solve_ivp(rhs, span, s0, method="DOP853", rtol=RTOL, atol=atol, events=section, dense_output=True)
    if sol.nfev > MAX_NFEV or sol.status == -1:
        raise StiffnessError(f"integration did not reach the section: {sol.message}")
    if sol.t_events[0].size:
        t_hit = float(sol.t_events[0][0])
        Z = float(sol.y_events[0][0][0])
    else:
        t_hit = direction * T
        Z = float(sol.sol(t_hit)[0])
    return math.exp(-sb * t_hit) * Z


def integrate_type_I(Ybar: float, nu: float, P: DulacParams) -> float:
    return integrate_transition(P, nu / P.rho0, P.rho0, Ybar, "r")


def integrate_type_II(r: float, rho: float, P: DulacParams) -> float:
    return integrate_transition(P, r, rho, P.Y0, "r")


def phi_envelope(r: float, P: DulacParams) -> float:
    """r^(p + q alpha) omega^(q+1) |ln r|, the size of the correction phi."""
    w = omega(r / P.r0, P.alpha)
    return r ** (P.p + P.q * P.alpha) * abs(w) ** (P.q + 1) * abs(math.log(r))


def phi_residual(r: float, rho: float, P: DulacParams) -> float:
    """phi recovered from the integrated type II map."""
    xi = r / P.r0
    D = integrate_type_II(r, rho, P)
    eta_term = P.eta * rho**P.p * omega(xi, P.alpha) if P.sigma_class.kind == "Integer" else 0.0
    return D / xi**P.sigma_bar - P.Y0 - eta_term


def type_II_map(P: DulacParams):
    return lambda r, rho: dulac_type_II(r, rho, P)


def regular_S(F):
    """(r, rho) -> (r F, nu / (r F)); the leaf nu = r rho is carried through unchanged."""

    def S(r, rho):
        f = F(r, rho)
        r1 = r * f
        return r1, (r * rho) / r1

    return S


def regular_T(H):
    return lambda Y: H(Y)


def compose_boundary_displacement(D3, D4, S, T, r0_limit: float = 1.0):
    """V(r, rho) = D4(S(r, rho)) - T(D3(r, rho))."""

    def V(r, rho):
        r1, rho1 = S(r, rho)
        if not (0 < r1 <= r0_limit) or not rho1 > 0:
            raise CompositionDomainError(f"S maps ({r}, {rho}) to ({r1}, {rho1}), outside the Dulac domain")
        return D4(r1, rho1) - T(D3(r, rho))

    return V


__all__ = [
    "DulacParams",
    "TransitionSample",
    "dulac_type_I",
    "dulac_type_II",
    "integrate_transition",
    "integrate_type_I",
    "integrate_type_II",
    "phi_envelope",
    "phi_residual",
    "type_II_map",
    "regular_S",
    "regular_T",
    "compose_boundary_displacement",
]
