"""Numeric evaluation of monomial sums and root counting along leaves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ..errors import DomainError, MissingConcreteRemainder
from .monomial import evaluate_pairs, lie_pairs
from .remainder import MonomialSum, Term

DEFAULT_GRID = 4096
DEFAULT_RHO_MAX = 0.5
ROOT_XTOL = 1e-12
# |V| below this fraction of sum |A_i M_i| at a local extremum counts as a double root
TANGENCY_REL = 1e-10


def _pairs(term: Term):
    pairs = term.expand()
    if pairs is None:
        raise MissingConcreteRemainder(f"term with remainder {term.remainder.kind} has no concrete realization")
    return pairs


def sum_pairs(V: MonomialSum):
    out = []
    for t in V.terms:
        out.extend(_pairs(t))
    return out


def _check_r(V: MonomialSum, r):
    r0 = min(t.monomial.r0 for t in V.terms)
    if np.any(np.asarray(r) <= 0) or np.any(np.asarray(r) > r0 * (1 + 1e-12)):
        raise DomainError(f"r must lie in (0, {r0:g}]")


def evaluate_sum(V: MonomialSum, r, rho):
    """sum_i A_i M_i(r, rho) (1 + h_i(r, rho))."""
    _check_r(V, r)
    out = evaluate_pairs(sum_pairs(V), r, rho)
    return float(out) if np.ndim(out) == 0 else out


def lie_evaluate(V: MonomialSum, r, rho):
    """L_X V evaluated through the exact monomial rules."""
    _check_r(V, r)
    out = evaluate_pairs(lie_pairs(sum_pairs(V)), r, rho)
    return float(out) if np.ndim(out) == 0 else out


def scale_of(V: MonomialSum, r, rho):
    """sum_i |A_i M_i|: the natural size against which V is judged small."""
    total = 0.0
    for t in V.terms:
        total = total + np.abs(t.coeff * t.monomial.evaluate(r, rho))
    return total


def dd_step_evaluate(V: MonomialSum, r, rho, lead: int = 0):
    """One derivation-division pass: L_X[V / (M_lead (1 + h_lead))].

    Uses L[V/D] = L[R/D] with R the other terms, so the leading coefficient
    drops out exactly rather than by cancellation.
    """
    _check_r(V, r)
    lt = V.terms[lead]
    d_pairs = _pairs(Term(1.0, lt.monomial, lt.remainder, lt.concrete))
    rest = []
    for k, t in enumerate(V.terms):
        if k != lead:
            rest.extend(_pairs(t))
    D = evaluate_pairs(d_pairs, r, rho)
    LD = evaluate_pairs(lie_pairs(d_pairs), r, rho)
    R = evaluate_pairs(rest, r, rho)
    LR = evaluate_pairs(lie_pairs(rest), r, rho)
    out = (LR * D - R * LD) / (D * D)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class RootCount:
    count: int
    roots: tuple
    identically_zero: bool = False
    tangencies: int = 0

    def __int__(self) -> int:
        return self.count

    def __le__(self, other) -> bool:
        return self.count <= int(other)


def _leaf_function(V: MonomialSum, nu: float):
    pairs = sum_pairs(V)
    if V.mode == "OneVar":
        return lambda r: evaluate_pairs(pairs, r, 0.0)
    return lambda r: evaluate_pairs(pairs, r, nu / r)


def count_roots_leaf(
    V: MonomialSum,
    nu: float,
    r_min: float,
    r_max: float,
    grid: int = DEFAULT_GRID,
    rho_max: float = DEFAULT_RHO_MAX,
) -> RootCount:
    """Count roots of r -> V(r, nu / r) on [r_min, r_max], with multiplicity where resolvable.

    A log-spaced scan finds sign changes, refined by Brent's method.  Interior
    extrema of |V| that come within TANGENCY_REL of the term scale are refined
    by bounded minimization: a sign flip there exposes two close simple roots,
    a near-zero extremum without a flip counts as a double root.
    """
    if not 0 < r_min < r_max:
        raise DomainError("need 0 < r_min < r_max")
    _check_r(V, r_max)
    if V.mode == "TwoVar" and nu / r_min > rho_max * (1 + 1e-12):
        raise DomainError(f"rho = nu / r_min = {nu / r_min:g} exceeds {rho_max:g}")
    if V.identically_zero:
        return RootCount(0, (), True, 0)
    f = _leaf_function(V, nu)
    rs = np.geomspace(r_min, r_max, grid)
    vals = f(rs)
    rho_s = np.zeros_like(rs) if V.mode == "OneVar" else nu / rs
    scale = scale_of(V, rs, rho_s)
    sgn = np.sign(vals)
    roots = []
    count = 0
    tangencies = 0

    def g(logr):
        return float(f(np.exp(logr)))

    for i in range(grid - 1):
        if sgn[i] == 0:
            roots.append(float(rs[i]))
            count += 1
        elif sgn[i] * sgn[i + 1] < 0:
            x = brentq(g, np.log(rs[i]), np.log(rs[i + 1]), xtol=ROOT_XTOL, rtol=4 * np.finfo(float).eps)
            roots.append(float(np.exp(x)))
            count += 1
    if sgn[-1] == 0:
        roots.append(float(rs[-1]))
        count += 1

    # hidden pairs of roots and tangencies near interior extrema of |V|
    absv = np.abs(vals)
    for i in range(1, grid - 1):
        if not (sgn[i - 1] == sgn[i] == sgn[i + 1] != 0):
            continue
        if not (absv[i] <= absv[i - 1] and absv[i] <= absv[i + 1]):
            continue
        lo, hi = np.log(rs[i - 1]), np.log(rs[i + 1])
        res = minimize_scalar(lambda x: sgn[i] * g(x), bounds=(lo, hi), method="bounded", options={"xatol": 1e-14})
        xm = float(res.x)
        vm = g(xm)
        if np.sign(vm) == -sgn[i]:
            a = brentq(g, lo, xm, xtol=ROOT_XTOL)
            b = brentq(g, xm, hi, xtol=ROOT_XTOL)
            roots.extend([float(np.exp(a)), float(np.exp(b))])
            count += 2
        elif abs(vm) < TANGENCY_REL * scale[i]:
            # curvature check: the extremum really is a turn toward zero
            if sgn[i] * (g(lo) + g(hi) - 2 * vm) > 0:
                roots.append(float(np.exp(xm)))
                count += 2
                tangencies += 1
    return RootCount(count, tuple(sorted(roots)), False, tangencies)


__all__ = [
    "evaluate_sum",
    "lie_evaluate",
    "dd_step_evaluate",
    "count_roots_leaf",
    "RootCount",
    "scale_of",
    "sum_pairs",
    "DEFAULT_GRID",
]
