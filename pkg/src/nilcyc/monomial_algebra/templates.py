"""Displacement-map templates for the boundary, hemicycle and one-variable cases.

Raw storage keeps rho powers explicit: nu r^(p - 1 + alpha) is stored as
r^(p + alpha) rho.  Unspecified nonzero constants are passed in as c1, c2, c3.
"""

from __future__ import annotations

import math

from ..errors import ParamError
from .monomial import ZERO, ExponentPair, GeneralMonomial, OmegaFactor
from .remainder import EXACT_ZERO, SMALL_O, ZERO_REMAINDER, MonomialSum, Term, big_o

KINDS = (
    "BoundaryIrrational",
    "BoundaryPGeq2",
    "BoundaryP1",
    "Hemicycle",
    "OneVarIntermediate",
    "LowerSxhh1",
    "LowerSxhh5",
)

_DEFAULTS = {
    "eps0": 0.0,
    "eps1": 0.0,
    "mu_bar3": 0.0,
    "alpha": 0.0,
    "C3": 1.0,
    "c1": 1.0,
    "c2": 1.0,
    "c3": 1.0,
    "K": 0.0,
    "delta": 0.5,
    "r0": 1.0,
}


def _pair(lam, lam0) -> ExponentPair:
    return ExponentPair(lam, lam0)


def _mono(P, a=ZERO, b=ZERO, omegas=()):
    return GeneralMonomial(a, b, omegas, (), P["r0"])


def _term(P, k, coeff, mono, cls):
    rems = P.get("remainders") or ()
    conc = rems[k] if k < len(rems) and rems[k] is not None else ZERO_REMAINDER
    if cls == EXACT_ZERO and conc.terms:
        raise ParamError(f"term {k} cannot carry a remainder")
    return Term(coeff, mono, cls, conc)


def _is_int(x: float) -> bool:
    return abs(x - round(x)) < 1e-12


def _boundary_head(P, sigma0: float):
    s = _pair(sigma0 + P["alpha"], sigma0)
    one = _mono(P)
    r_s = _mono(P, s)
    r_s_rho = _mono(P, s, _pair(1.0, 1.0))
    d = big_o(P["delta"])
    return [
        _term(P, 0, -P["eps0"], one, d),
        _term(P, 1, -P["C3"] * P["eps1"], r_s, d),
        _term(P, 2, P["c2"] * P["mu_bar3"], r_s_rho, SMALL_O),
    ]


def make_template(kind: str, params: dict | None = None, **kw) -> MonomialSum:
    P = dict(_DEFAULTS)
    P.update(params or {})
    P.update(kw)
    if kind not in KINDS:
        raise ParamError(f"unknown template kind {kind!r}")
    meta = {"template": kind}

    if kind == "BoundaryIrrational":
        sigma0 = float(P.get("sigma0", math.sqrt(2.0)))
        if _is_int(sigma0):
            raise ParamError("BoundaryIrrational needs a non-integer sigma0")
        return MonomialSum(tuple(_boundary_head(P, sigma0)), "TwoVar", meta)

    if kind in ("BoundaryPGeq2", "BoundaryP1"):
        p = P.get("p", 2 if kind == "BoundaryPGeq2" else 1)
        if not _is_int(p) or p < 1:
            raise ParamError("p must be a positive integer")
        p = int(round(p))
        if kind == "BoundaryPGeq2" and p < 2:
            raise ParamError("BoundaryPGeq2 needs p >= 2")
        if kind == "BoundaryP1" and p != 1:
            raise ParamError("BoundaryP1 needs p = 1")
        head = _boundary_head(P, float(p))
        alpha = P["alpha"]
        w = (OmegaFactor(_pair(alpha, 0.0), 1.0),)
        last = _mono(P, _pair(p + alpha, p), _pair(p, p), w)
        if kind == "BoundaryPGeq2":
            head.append(_term(P, 3, P["K"], last, EXACT_ZERO))
        else:
            head.append(_term(P, 3, P["c3"] * P["mu_bar3"], last, big_o(P["delta"])))
        meta["p"] = p
        return MonomialSum(tuple(head), "TwoVar", meta)

    if kind == "Hemicycle":
        sig = P.get("sigma", 1.5)
        sig0 = P.get("sigma0", sig)
        if abs(sig0 - 1.0) < 1e-12:
            raise ParamError("Hemicycle exponent must differ from 1 at the base point")
        s = _pair(sig, sig0)
        d = big_o(P["delta"])
        terms = (
            _term(P, 0, P["eps0"], _mono(P), d),
            _term(P, 1, P["c1"] * P["eps1"], _mono(P, s), d),
            _term(P, 2, -P["c2"] * P["mu_bar3"], _mono(P, s, _pair(1.0, 1.0)), SMALL_O),
        )
        return MonomialSum(terms, "TwoVar", meta)

    if kind == "OneVarIntermediate":
        n = int(P.get("n", 2))
        eps = list(P.get("eps", [P["eps0"], P["eps1"]][:n]))
        if n < 1 or len(eps) != n:
            raise ParamError("OneVarIntermediate needs n >= 1 and n coefficients eps_0..eps_{n-1}")
        coeffs = eps + [P["c"] * P["mu_bar3"] if "c" in P else P["c2"] * P["mu_bar3"]]
        terms = tuple(
            _term(P, i, c, _mono(P, _pair(i, i)), big_o(1.0) if i else big_o(P["delta"])) for i, c in enumerate(coeffs)
        )
        return MonomialSum(terms, "OneVar", meta)

    if kind == "LowerSxhh1":
        tau = float(P.get("tau", 1.0))
        w = (OmegaFactor(_pair(tau - 1.0, 0.0), 1.0),)
        terms = (
            _term(P, 0, P["eps0"], _mono(P), SMALL_O),
            _term(P, 1, P["mu_bar3"], _mono(P, _pair(1.0, 1.0), ZERO, w), SMALL_O),
            _term(P, 2, P["eps1"], _mono(P, _pair(1.0, 1.0)), SMALL_O),
        )
        return MonomialSum(terms, "OneVar", meta)

    # LowerSxhh5
    tau = float(P.get("tau", 1.5))
    tau0 = float(P.get("tau0", tau))
    eps = list(P.get("eps", []))
    if _is_int(tau0):
        top = int(round(tau0))
        last = _mono(P, _pair(tau0, tau0), ZERO, (OmegaFactor(_pair(tau - tau0, 0.0), 1.0),))
    else:
        top = max(math.floor(tau0), 1)
        last = _mono(P, _pair(tau, tau0))
    if len(eps) != top + 1:
        raise ParamError(f"LowerSxhh5 needs {top + 1} coefficients eps_0..eps_{top}")
    terms = [_term(P, i, c, _mono(P, _pair(i, i)), SMALL_O) for i, c in enumerate(eps)]
    terms.append(_term(P, top + 1, P["mu_bar3"], last, SMALL_O))
    return MonomialSum(tuple(terms), "OneVar", meta)


__all__ = ["make_template", "KINDS"]
