"""Seeded random instances for the root-bound soundness sweeps.

The bounds hold on a sufficiently small neighborhood of the origin, so each
instance comes with its own leaf domain.  Exponent gaps are kept >= MIN_GAP,
compensator factors are sparse and near gamma = 0, and remainders are small
positive powers; r_max shrinks when compensators are present because
r^p omega(r) turns at omega = 1/p.
"""

from __future__ import annotations

import numpy as np

from .io import LeafDomain
from .monomial import ExponentPair, GeneralMonomial, OmegaFactor
from .remainder import EXACT_ZERO, ConcreteRemainder, MonomialSum, Term, big_o
from .templates import make_template

MIN_GAP = 0.3
H_MAX = 0.1


def _coeff(rng) -> float:
    return float(rng.choice([-1.0, 1.0]) * 10 ** rng.uniform(-3, 0))


def _remainder(rng, two_var: bool, min_r_power: float = 0.5):
    """A concrete remainder h with |h| <= H_MAX on the unit square."""
    n = int(rng.integers(1, 3))
    terms = []
    budget = H_MAX
    for _ in range(n):
        c = float(rng.uniform(-1, 1)) * budget / n
        if two_var and rng.random() < 0.3:
            e = float(rng.choice([1.0, 2.0]))
            m = GeneralMonomial(ExponentPair(0.0, 0.0), ExponentPair(e, e))
        else:
            e = round(float(rng.uniform(min_r_power, 1.5)), 3)
            m = GeneralMonomial(ExponentPair(e, e))
        terms.append((c, m))
    return ConcreteRemainder(tuple(terms))


def _leaf_domain(rng, r_max: float, two_var: bool) -> LeafDomain:
    r_min = r_max * 1e-4
    if two_var:
        top = 0.5 * r_min
        nus = tuple(float(x) for x in np.geomspace(top * 1e-4, top, 5))
    else:
        nus = (0.0,)
    return LeafDomain(r_min, r_max, 0.5, nus)


def random_nonresonant_sum(rng: np.random.Generator, max_terms: int = 4, mode: str = "TwoVar"):
    """A random sum with pairwise non-resonant leading monomials, plus its leaf domain."""
    two_var = mode == "TwoVar"
    l = int(rng.integers(1, max_terms + 1))
    grid = np.round(np.arange(-1.0, 2.01, 0.1), 10)
    while True:
        p0 = np.sort(rng.choice(grid, size=l, replace=False))
        if l == 1 or np.min(np.diff(p0)) >= MIN_GAP - 1e-9:
            break
    has_omega = False
    terms = []
    for p in p0:
        b = float(rng.integers(0, 2)) if two_var else 0.0
        a0 = float(p) + b
        a = ExponentPair(a0 + float(rng.uniform(-0.02, 0.02)), a0)
        oms = ()
        if rng.random() < 0.15:
            oms = (OmegaFactor(ExponentPair(float(rng.uniform(-0.05, 0.05)), 0.0), 1.0),)
            has_omega = True
        mono = GeneralMonomial(a, ExponentPair(b, b), oms)
        if rng.random() < 0.5:
            h = _remainder(rng, two_var)
            terms.append(Term(_coeff(rng), mono, h.tightest_class(), h))
        else:
            terms.append(Term(_coeff(rng), mono, EXACT_ZERO, None))
    V = MonomialSum(tuple(terms), mode)
    gap = float(np.min(np.diff(p0))) if l > 1 else 1.0
    r_max = float(np.exp(-2.0 / gap)) if has_omega else 0.9
    return V, _leaf_domain(rng, r_max, two_var)


def random_p_geq_2(rng: np.random.Generator):
    """A random instance of the four-term integer-ratio shape with p >= 2."""
    p = int(rng.integers(2, 4))
    alpha = float(rng.uniform(-0.05, 0.05))
    delta = 0.5
    rems = (
        _remainder(rng, False, min_r_power=delta),
        _remainder(rng, False, min_r_power=delta),
        _remainder(rng, True),
        None,
    )
    V = make_template(
        "BoundaryPGeq2",
        p=p,
        alpha=alpha,
        eps0=_coeff(rng),
        eps1=_coeff(rng),
        mu_bar3=_coeff(rng),
        K=_coeff(rng),
        delta=delta,
        remainders=rems,
    )
    return V, _leaf_domain(rng, float(np.exp(-3.0)), True)


def random_p_1(rng: np.random.Generator):
    """A random instance of the four-term shape with p = 1."""
    alpha = float(rng.uniform(-0.05, 0.05))
    delta = 0.5
    rems = (
        _remainder(rng, False, min_r_power=delta),
        _remainder(rng, False, min_r_power=delta),
        _remainder(rng, True),
        _remainder(rng, False, min_r_power=delta),
    )
    V = make_template(
        "BoundaryP1",
        alpha=alpha,
        eps0=_coeff(rng),
        eps1=_coeff(rng),
        mu_bar3=_coeff(rng),
        c3=float(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)),
        delta=delta,
        remainders=rems,
    )
    return V, _leaf_domain(rng, float(np.exp(-3.0)), True)


__all__ = ["random_nonresonant_sum", "random_p_geq_2", "random_p_1", "MIN_GAP", "H_MAX", "big_o"]
