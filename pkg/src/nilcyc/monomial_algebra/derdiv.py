"""Derivation-division root bounds with certificates.

For V = sum_i A_i M_i (1 + g_i) with pairwise distinct reduced exponents
p_i0 = a_i0 - b_i0, repeatedly divide by the leading term and apply L_X.
Each pass removes one term, so by Rolle along the leaves r rho = nu the sum
has at most l - 1 roots (or vanishes identically).

Two resonant shapes from the integer-ratio boundary case get dedicated
treatment: the first pass uses L_X[r^a omega_a (1 + O(r^d))] = -r^a (1 + O(r^d))
before the generic algorithm takes over.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import OmegaBigPresent, PEqualsOne, ResonanceError, ShapeError
from .monomial import ZERO, ExponentPair, GeneralMonomial, is_resonant_pair, monomial
from .remainder import (
    BIG_O_KIND,
    DIVISOR_TOL,
    EXACT_ZERO_KIND,
    SMALL_O,
    SMALL_O_KIND,
    MonomialSum,
    RemainderClass,
    Term,
    big_o,
)

THEOREMS = ("DerDiv", "PGeq2", "P1")


@dataclass(frozen=True)
class CertificateStep:
    divided_by: GeneralMonomial
    divisor_value: float
    remaining_terms: int
    divisors: tuple = ()
    note: str = ""


@dataclass(frozen=True)
class RootBoundCertificate:
    bound: int
    steps: tuple
    theorem: str
    initial_terms: int = 0
    ordering: tuple = field(default=())

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem tag {self.theorem!r}")
        if self.bound < 0:
            raise ValueError("bound must be non-negative")
        if self.theorem == "DerDiv" and self.bound != self.initial_terms - 1:
            raise ValueError("derivation-division bound must equal l - 1")


def _check_pairwise(monos):
    for i in range(len(monos)):
        for j in range(i + 1, len(monos)):
            if is_resonant_pair(monos[i], monos[j]):
                raise ResonanceError(
                    f"leading monomials {i} ({monos[i]}) and {j} ({monos[j]}) are resonant",
                    pair=(i, j),
                )


def _dd_steps(monos):
    """Division/derivation passes over monomials already sorted by p0."""
    steps = []
    current = list(monos)
    while len(current) > 1:
        lead = current[0]
        quotients = [m / lead for m in current[1:]]
        divisors = tuple(q.divisor() for q in quotients)
        for k, d in enumerate(divisors):
            if abs(d) <= DIVISOR_TOL:
                raise ResonanceError(
                    f"divisor {d:g} of {quotients[k]} is below tolerance",
                    pair=(0, k + 1),
                )
        smallest = min(divisors, key=abs)
        steps.append(CertificateStep(lead, smallest, len(quotients), divisors))
        current = quotients
    return steps


def derivation_division_bound(V: MonomialSum) -> RootBoundCertificate:
    monos = [t.monomial for t in V.terms]
    for k, m in enumerate(monos):
        if m.has_omega_big:
            raise OmegaBigPresent(f"leading monomial {k} ({m}) has an Omega factor")
    _check_pairwise(monos)
    order = tuple(sorted(range(len(monos)), key=lambda k: monos[k].p.lam0))
    steps = _dd_steps([monos[k] for k in order])
    return RootBoundCertificate(len(monos) - 1, tuple(steps), "DerDiv", len(monos), order)


# -- the resonant boundary shapes ---------------------------------------------


def _close(x: float, y: float) -> bool:
    return abs(x - y) <= 1e-12 * max(1.0, abs(x), abs(y))


def _exp0(m: GeneralMonomial):
    return m.a.lam0, m.b.lam0


def _is_order(t: Term, allowed) -> bool:
    return t.remainder.kind in allowed


def _single_omega(m: GeneralMonomial):
    if len(m.omegas) != 1 or m.omega_bigs or not _close(m.omegas[0].power, 1.0):
        return None
    return m.omegas[0].gamma


def _check_constant_term(t: Term):
    m = t.monomial
    if _exp0(m) != (0.0, 0.0) or m.a.lam != 0.0 or m.b.lam != 0.0 or m.omegas or m.omega_bigs:
        raise ShapeError("first term must be the constant monomial 1")
    if not _is_order(t, (EXACT_ZERO_KIND, BIG_O_KIND)):
        raise ShapeError("first remainder must be O(r^delta)")


def _plain(m: GeneralMonomial) -> bool:
    return not m.omegas and not m.omega_bigs


def _shape_p_geq_2(V: MonomialSum):
    if len(V.terms) != 4:
        raise ShapeError(f"expected four terms, got {len(V.terms)}")
    t0, t1, t2, t3 = V.terms
    _check_constant_term(t0)
    m1 = t1.monomial
    p = m1.a.lam0
    if m1.b.lam0 != 0.0 or not _plain(m1) or p != round(p) or p < 1:
        raise ShapeError("second term must be r^(p + alpha) with integer p")
    p = int(round(p))
    if p == 1:
        raise PEqualsOne("p = 1: use the dedicated p = 1 bound")
    alpha = m1.a.lam - p
    m2, m3 = t2.monomial, t3.monomial
    if not _plain(m2) or not (_close(m2.a.lam0, p) and _close(m2.b.lam0, 1.0)):
        raise ShapeError("third term must be nu r^(p - 1 + alpha) = r^(p+alpha) rho")
    if not _close(m2.p.lam, p - 1 + alpha):
        raise ShapeError("third term exponent inconsistent with alpha")
    g = _single_omega(m3)
    if g is None or not (_close(m3.a.lam0, p) and _close(m3.b.lam0, p)):
        raise ShapeError("fourth term must be nu^p r^alpha omega_alpha")
    if not (_close(m3.p.lam, alpha) and _close(g.lam, alpha)):
        raise ShapeError("fourth term exponent or compensator parameter inconsistent with alpha")
    if t3.remainder.kind != EXACT_ZERO_KIND or (t3.concrete is not None and t3.concrete.terms):
        raise ShapeError("fourth term must carry no remainder")
    return p, alpha


def _shape_p_1(V: MonomialSum):
    if len(V.terms) != 4:
        raise ShapeError(f"expected four terms, got {len(V.terms)}")
    t0, t1, t2, t3 = V.terms
    _check_constant_term(t0)
    m1, m2, m3 = t1.monomial, t2.monomial, t3.monomial
    if not _plain(m1) or not (_close(m1.a.lam0, 1.0) and m1.b.lam0 == 0.0):
        raise ShapeError("second term must be r^(1 + alpha)")
    alpha = m1.a.lam - 1.0
    if not _plain(m2) or not (_close(m2.a.lam0, 1.0) and _close(m2.b.lam0, 1.0)):
        raise ShapeError("third term must be nu r^alpha = r^(1+alpha) rho")
    if not _close(m2.p.lam, alpha):
        raise ShapeError("third term exponent inconsistent with alpha")
    g = _single_omega(m3)
    if g is None or not (_close(m3.a.lam0, 1.0) and _close(m3.b.lam0, 1.0)):
        raise ShapeError("fourth term must be nu r^alpha omega_alpha")
    if not (_close(m3.p.lam, alpha) and _close(g.lam, alpha)):
        raise ShapeError("fourth term exponent or compensator parameter inconsistent with alpha")
    if not _is_order(t3, (EXACT_ZERO_KIND, BIG_O_KIND)):
        raise ShapeError("fourth remainder must be O(r^delta)")
    return alpha


@dataclass(frozen=True)
class LieSingularIdentity:
    """L_X[r^alpha omega_alpha (1 + O(r^delta))] = -r^alpha (1 + O(r^delta))."""

    alpha: float
    delta: float
    source: GeneralMonomial
    coeff: float
    image: GeneralMonomial
    remainder: RemainderClass

    def apply(self, remainder: RemainderClass) -> RemainderClass:
        """Remainder class of the image for an input remainder class."""
        if remainder.kind == SMALL_O_KIND:
            raise ShapeError("the singular identity needs an O(r^delta) remainder, not o(1)")
        if remainder.kind == EXACT_ZERO_KIND:
            return remainder
        return big_o(min(remainder.delta, self.delta))


def lie_singular(alpha: float, delta: float) -> LieSingularIdentity:
    if not delta > 0:
        raise ShapeError("delta must be positive")
    src = monomial(ExponentPair(alpha, 0.0), omegas=[(ExponentPair(alpha, 0.0), 1.0)])
    img = GeneralMonomial(ExponentPair(alpha, 0.0), ZERO)
    return LieSingularIdentity(alpha, delta, src, -1.0, img, big_o(delta))


def bound_p_geq_2(V: MonomialSum) -> RootBoundCertificate:
    p, alpha = _shape_p_geq_2(V)
    t0, t1, t2, t3 = V.terms
    ident = lie_singular(alpha, t0.remainder.delta or 1.0)
    ident.apply(t3.remainder)
    m1, m2, m3 = t1.monomial, t2.monomial, t3.monomial
    # after dividing by (1 + h0) and deriving: the omega factor of term 3 is gone
    m3d = GeneralMonomial(m3.a, m3.b, (), (), m3.r0)
    step0 = CertificateStep(
        GeneralMonomial(r0=m1.r0),
        -1.0,
        3,
        (m1.divisor(), m2.divisor(), -1.0),
        "divide by the constant term, singular identity on the compensator term",
    )
    reduced = MonomialSum(
        (
            Term(t1.coeff * m1.divisor(), m1, SMALL_O),
            Term(t2.coeff * m2.divisor(), m2, SMALL_O),
            Term(-t3.coeff, m3d, ident.remainder),
        ),
        V.mode,
    )
    sub = derivation_division_bound(reduced)
    return RootBoundCertificate(1 + sub.bound, (step0,) + sub.steps, "PGeq2", 4, (0,) + tuple(1 + k for k in sub.ordering))


def bound_p_1(V: MonomialSum) -> RootBoundCertificate:
    alpha = _shape_p_1(V)
    t0, t1, t2, t3 = V.terms
    ident = lie_singular(alpha, t0.remainder.delta or t3.remainder.delta or 1.0)
    ident.apply(t3.remainder)
    m1 = t1.monomial
    step0 = CertificateStep(
        GeneralMonomial(r0=m1.r0),
        -1.0,
        3,
        (m1.divisor(), alpha, -1.0),
        "divide by the constant term, singular identity on the compensator term",
    )
    # r^(1+alpha) [eps (1 + g1) + rho (alpha A2 - A3)(1 + g4)] -> leading {1, rho}
    one = GeneralMonomial(r0=m1.r0)
    rho = GeneralMonomial(ZERO, ExponentPair(1.0, 1.0), r0=m1.r0)
    reduced = MonomialSum(
        (
            Term(t1.coeff * m1.divisor(), one, SMALL_O),
            Term(alpha * t2.coeff - t3.coeff, rho, SMALL_O),
        ),
        V.mode,
    )
    sub = derivation_division_bound(reduced)
    step1 = CertificateStep(m1, 1.0, 2, (), "group the two rho terms and factor out r^(1 + alpha)")
    return RootBoundCertificate(1 + sub.bound, (step0, step1) + sub.steps, "P1", 4, (0, 1, 2, 3))


def certify(V: MonomialSum) -> RootBoundCertificate:
    """Pick the applicable bound: a resonant boundary shape if V has one, else derivation-division."""
    if len(V.terms) == 4:
        for fn in (bound_p_geq_2, bound_p_1):
            try:
                return fn(V)
            except ShapeError:
                pass
    return derivation_division_bound(V)


__all__ = [
    "certify",
    "CertificateStep",
    "RootBoundCertificate",
    "LieSingularIdentity",
    "derivation_division_bound",
    "bound_p_geq_2",
    "bound_p_1",
    "lie_singular",
]
