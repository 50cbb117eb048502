"""Remainder order classes, concrete remainders, terms and sums.

A term is A * M * (1 + h).  The order of h is tracked as one of

    ExactZero  <  BigO_r_delta(delta)  <  SmallO_1

and, for numeric work, optionally realized by a ConcreteRemainder: a finite
explicit combination of general monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import OmegaBigPresent, ParamError, ResonanceError
from .monomial import (
    LAM0_ATOL,
    GeneralMonomial,
    OmegaFactor,
    combine,
    evaluate_pairs,
    lie_pairs,
)

EXACT_ZERO_KIND = "ExactZero"
BIG_O_KIND = "BigO_r_delta"
SMALL_O_KIND = "SmallO_1"
_RANK = {EXACT_ZERO_KIND: 0, BIG_O_KIND: 1, SMALL_O_KIND: 2}

# |a - b - gamma c| below this is treated as resonant at runtime
DIVISOR_TOL = 1e-8


@dataclass(frozen=True)
class RemainderClass:
    kind: str = EXACT_ZERO_KIND
    delta: float | None = None

    def __post_init__(self):
        if self.kind not in _RANK:
            raise ParamError(f"unknown remainder kind {self.kind!r}")
        if self.kind == BIG_O_KIND:
            if self.delta is None or not self.delta > 0:
                raise ParamError("BigO_r_delta needs delta > 0")
            object.__setattr__(self, "delta", float(self.delta))
        elif self.delta is not None:
            object.__setattr__(self, "delta", None)

    @property
    def rank(self) -> int:
        return _RANK[self.kind]

    def join(self, other: "RemainderClass") -> "RemainderClass":
        """Class of g + h, of (1+g)(1+h) - 1 and of (1+g)/(1+h) - 1."""
        if self.rank != other.rank:
            return self if self.rank > other.rank else other
        if self.kind == BIG_O_KIND:
            return RemainderClass(BIG_O_KIND, min(self.delta, other.delta))
        return self

    def lie(self) -> "RemainderClass":
        # L_X keeps O(r^delta) and o(1) functions on monomials in their class
        return self

    def __le__(self, other: "RemainderClass") -> bool:
        if self.rank != other.rank:
            return self.rank < other.rank
        if self.kind == BIG_O_KIND:
            return self.delta >= other.delta
        return True


EXACT_ZERO = RemainderClass(EXACT_ZERO_KIND)
SMALL_O = RemainderClass(SMALL_O_KIND)


def big_o(delta: float) -> RemainderClass:
    return RemainderClass(BIG_O_KIND, delta)


def _comp_powers(m: GeneralMonomial):
    return [f.power for f in m.omegas] + [f.power for f in m.omega_bigs]


def monomial_is_small(m: GeneralMonomial) -> bool:
    """Structural o(1) test as (r, rho) -> 0 within the domain rectangle."""
    a0, b0 = m.a.lam0, m.b.lam0
    if a0 < -LAM0_ATOL or b0 < -LAM0_ATOL:
        return False
    powers = _comp_powers(m)
    if a0 > LAM0_ATOL:
        return True
    # no r-power to absorb growing compensators
    if any(c > 0 for c in powers):
        return False
    return b0 > LAM0_ATOL or any(c < 0 for c in powers)


def monomial_is_big_o(m: GeneralMonomial, delta: float) -> bool:
    a0, b0 = m.a.lam0, m.b.lam0
    if b0 < -LAM0_ATOL:
        return False
    if any(c > 0 for c in _comp_powers(m)):
        return a0 > delta + LAM0_ATOL
    return a0 >= delta - LAM0_ATOL


@dataclass(frozen=True)
class ConcreteRemainder:
    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((float(c), m) for c, m in self.terms))

    def evaluate(self, r, rho):
        return evaluate_pairs(self.terms, r, rho)

    def belongs_to(self, cls: RemainderClass) -> bool:
        if not self.terms:
            return True
        if cls.kind == EXACT_ZERO_KIND:
            return all(c == 0.0 for c, _ in self.terms)
        if cls.kind == BIG_O_KIND:
            return all(monomial_is_big_o(m, cls.delta) for _, m in self.terms)
        return all(monomial_is_small(m) for _, m in self.terms)

    def tightest_class(self) -> RemainderClass:
        """Smallest class in the lattice containing this remainder."""
        live = [m for c, m in self.terms if c != 0.0]
        if not live:
            return EXACT_ZERO
        if all(not any(c > 0 for c in _comp_powers(m)) and m.b.lam0 >= -LAM0_ATOL for m in live):
            d = min(m.a.lam0 for m in live)
            if d > LAM0_ATOL:
                return big_o(d)
        if all(m.b.lam0 >= -LAM0_ATOL and m.a.lam0 > LAM0_ATOL for m in live):
            return big_o(0.5 * min(m.a.lam0 for m in live))
        return SMALL_O

    def lie(self) -> "ConcreteRemainder":
        return ConcreteRemainder(tuple(lie_pairs(self.terms)))

    def times(self, m: GeneralMonomial) -> "ConcreteRemainder":
        return ConcreteRemainder(tuple((c, mm * m) for c, mm in self.terms))

    def scaled(self, k: float) -> "ConcreteRemainder":
        return ConcreteRemainder(tuple((k * c, m) for c, m in self.terms))

    def __add__(self, other: "ConcreteRemainder") -> "ConcreteRemainder":
        return ConcreteRemainder(tuple(combine(self.terms + other.terms)))


ZERO_REMAINDER = ConcreteRemainder(())


@dataclass(frozen=True)
class Term:
    coeff: float
    monomial: GeneralMonomial
    remainder: RemainderClass = EXACT_ZERO
    concrete: ConcreteRemainder | None = None

    def __post_init__(self):
        object.__setattr__(self, "coeff", float(self.coeff))
        if self.concrete is not None and not self.concrete.belongs_to(self.remainder):
            raise ParamError(f"concrete remainder is not of class {self.remainder.kind}")

    def remainder_pairs(self):
        """The explicit h as (coefficient, monomial) pairs, or None when unknown."""
        if self.concrete is not None:
            return self.concrete.terms
        if self.remainder.kind == EXACT_ZERO_KIND:
            return ()
        return None

    def expand(self):
        """A M (1 + h) as explicit pairs; None when h is not concrete."""
        h = self.remainder_pairs()
        if h is None:
            return None
        pairs = [(self.coeff, self.monomial)]
        pairs.extend((self.coeff * c, self.monomial * m) for c, m in h)
        return pairs


@dataclass(frozen=True)
class MonomialSum:
    terms: tuple
    mode: str = "TwoVar"
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ParamError("a monomial sum needs at least one term")
        if self.mode not in ("TwoVar", "OneVar"):
            raise ParamError(f"unknown mode {self.mode!r}")
        if self.mode == "OneVar":
            for t in self.terms:
                ms = [t.monomial] + [m for _, m in (t.concrete.terms if t.concrete else ())]
                if any(m.b.lam != 0.0 or m.b.lam0 != 0.0 for m in ms):
                    raise ParamError("one-variable sums cannot carry rho powers")

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def identically_zero(self) -> bool:
        return all(t.coeff == 0.0 for t in self.terms)

    def with_coeffs(self, coeffs) -> "MonomialSum":
        ts = tuple(Term(c, t.monomial, t.remainder, t.concrete) for c, t in zip(coeffs, self.terms))
        return MonomialSum(ts, self.mode, dict(self.meta))


def lie_term(T: Term) -> Term:
    """L_X[A M (1 + h)] = (a - b - gamma c) A M (1 + g).

    g = h + (L h - sum_i c_i omega_i^-1 (1 + h)) / (a - b - gamma c).
    """
    M = T.monomial
    if M.has_omega_big:
        raise OmegaBigPresent("leading monomial carries an Omega factor")
    if abs(M.p.lam0) <= LAM0_ATOL:
        raise ResonanceError(f"monomial {M} is resonant (a0 - b0 = 0)", pair=(M,))
    div = M.divisor()
    if abs(div) <= DIVISOR_TOL:
        raise ResonanceError(f"divisor {div:g} of {M} is below tolerance", pair=(M,))
    cls = T.remainder.lie()
    if M.omegas:
        # omega^-1 is o(1) but no power of r
        cls = cls.join(SMALL_O)
    h = T.remainder_pairs()
    concrete = None
    if h is not None:
        pairs = list(h)
        extra = list(lie_pairs(h))
        for f in M.omegas:
            inv = GeneralMonomial(omegas=(OmegaFactor(f.gamma, -1.0),), r0=M.r0)
            extra.append((-f.power, inv))
            extra.extend((-f.power * c, m * inv) for c, m in h)
        pairs.extend((c / div, m) for c, m in extra)
        concrete = ConcreteRemainder(tuple(combine(pairs)))
        if not concrete.belongs_to(cls):
            cls = cls.join(concrete.tightest_class())
    return Term(T.coeff * div, M, cls, concrete)


__all__ = [
    "RemainderClass",
    "EXACT_ZERO",
    "SMALL_O",
    "big_o",
    "ConcreteRemainder",
    "ZERO_REMAINDER",
    "Term",
    "MonomialSum",
    "lie_term",
    "monomial_is_small",
    "monomial_is_big_o",
    "DIVISOR_TOL",
]
