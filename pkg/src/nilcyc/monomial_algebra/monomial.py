"""General monomials r^a rho^b prod omega_i^c_i prod Omega_j^d_j.

Every exponent is an ExponentPair carrying its value at the current
parameter lambda and at the base point lambda_0.  The compensators are
evaluated at xi = r / r0.

The Lie derivative is along X = r d/dr - rho d/drho, whose orbits are the
leaves r * rho = nu.  The rules used are

    L r^a = a r^a,   L rho^b = -b rho^b,
    L omega_g = -(1 + g omega_g),
    L Omega_{g1,g2} = -(omega_g1 + g2 Omega_{g1,g2}).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..compensator import omega, omega_big
from ..errors import ParamError

log = logging.getLogger(__name__)

# warn when |lam - lam0| exceeds this
NEIGHBORHOOD_RADIUS = 0.5
# lambda_0 exponents closer than this are treated as equal
LAM0_ATOL = 1e-12


@dataclass(frozen=True)
class ExponentPair:
    lam: float
    lam0: float

    def __post_init__(self):
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "lam0", float(self.lam0))
        if abs(self.lam - self.lam0) > NEIGHBORHOOD_RADIUS:
            log.warning("exponent %g is far from its base value %g", self.lam, self.lam0)

    @classmethod
    def const(cls, value: float) -> "ExponentPair":
        return cls(value, value)

    def __add__(self, other: "ExponentPair") -> "ExponentPair":
        return ExponentPair(self.lam + other.lam, self.lam0 + other.lam0)

    def __sub__(self, other: "ExponentPair") -> "ExponentPair":
        return ExponentPair(self.lam - other.lam, self.lam0 - other.lam0)

    def __neg__(self) -> "ExponentPair":
        return ExponentPair(-self.lam, -self.lam0)

    def scale(self, k: float) -> "ExponentPair":
        return ExponentPair(k * self.lam, k * self.lam0)


ZERO = ExponentPair(0.0, 0.0)


def _as_pair(x) -> ExponentPair:
    if isinstance(x, ExponentPair):
        return x
    if isinstance(x, tuple):
        return ExponentPair(*x)
    return ExponentPair.const(x)


@dataclass(frozen=True)
class OmegaFactor:
    gamma: ExponentPair
    power: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "gamma", _as_pair(self.gamma))
        object.__setattr__(self, "power", float(self.power))
        if abs(self.gamma.lam0) > LAM0_ATOL:
            raise ParamError("compensator parameter must vanish at lambda_0")


@dataclass(frozen=True)
class OmegaBigFactor:
    gamma1: ExponentPair
    gamma2: ExponentPair
    power: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "gamma1", _as_pair(self.gamma1))
        object.__setattr__(self, "gamma2", _as_pair(self.gamma2))
        object.__setattr__(self, "power", float(self.power))
        if abs(self.gamma1.lam0) > LAM0_ATOL or abs(self.gamma2.lam0) > LAM0_ATOL:
            raise ParamError("compensator parameters must vanish at lambda_0")


def _merge(factors, key, make):
    powers: dict = {}
    order = []
    for f in factors:
        k = key(f)
        if k not in powers:
            powers[k] = 0.0
            order.append(k)
        powers[k] += f.power
    out = [make(k, powers[k]) for k in sorted(order) if powers[k] != 0.0]
    return tuple(out)


def _omega_key(f: OmegaFactor):
    return (f.gamma.lam, f.gamma.lam0)


def _big_key(f: OmegaBigFactor):
    return (f.gamma1.lam, f.gamma1.lam0, f.gamma2.lam, f.gamma2.lam0)


def _make_omega(k, c):
    return OmegaFactor(ExponentPair(k[0], k[1]), c)


def _make_big(k, d):
    return OmegaBigFactor(ExponentPair(k[0], k[1]), ExponentPair(k[2], k[3]), d)


@dataclass(frozen=True)
class GeneralMonomial:
    a: ExponentPair = ZERO
    b: ExponentPair = ZERO
    omegas: tuple = ()
    omega_bigs: tuple = ()
    r0: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", _as_pair(self.a))
        object.__setattr__(self, "b", _as_pair(self.b))
        object.__setattr__(self, "omegas", _merge(self.omegas, _omega_key, _make_omega))
        object.__setattr__(self, "omega_bigs", _merge(self.omega_bigs, _big_key, _make_big))
        object.__setattr__(self, "r0", float(self.r0))
        if not self.r0 > 0:
            raise ParamError("section scale r0 must be positive")

    # reduced exponent p = a - b
    @property
    def p(self) -> ExponentPair:
        return self.a - self.b

    @property
    def has_omega_big(self) -> bool:
        return bool(self.omega_bigs)

    @property
    def is_unit(self) -> bool:
        return self == GeneralMonomial(r0=self.r0)

    def gamma_c(self) -> float:
        """Sum of gamma_i c_i at lambda."""
        return sum(f.gamma.lam * f.power for f in self.omegas)

    def divisor(self) -> float:
        """a - b - sum gamma c at lambda: the factor a Lie derivation puts on M."""
        return self.a.lam - self.b.lam - self.gamma_c() - sum(f.gamma2.lam * f.power for f in self.omega_bigs)

    def __mul__(self, other: "GeneralMonomial") -> "GeneralMonomial":
        return GeneralMonomial(
            self.a + other.a,
            self.b + other.b,
            self.omegas + other.omegas,
            self.omega_bigs + other.omega_bigs,
            self.r0,
        )

    def inverse(self) -> "GeneralMonomial":
        return GeneralMonomial(
            -self.a,
            -self.b,
            tuple(OmegaFactor(f.gamma, -f.power) for f in self.omegas),
            tuple(OmegaBigFactor(f.gamma1, f.gamma2, -f.power) for f in self.omega_bigs),
            self.r0,
        )

    def __truediv__(self, other: "GeneralMonomial") -> "GeneralMonomial":
        return self * other.inverse()

    def evaluate(self, r, rho):
        r = np.asarray(r, dtype=float)
        rho = np.asarray(rho, dtype=float)
        xi = r / self.r0
        with np.errstate(divide="ignore", invalid="ignore"):
            out = r**self.a.lam * rho**self.b.lam
        for f in self.omegas:
            out = out * omega(xi, f.gamma.lam) ** f.power
        for f in self.omega_bigs:
            out = out * omega_big(xi, f.gamma1.lam, f.gamma2.lam) ** f.power
        return out

    def __str__(self) -> str:
        parts = []
        if self.a.lam:
            parts.append(f"r^{self.a.lam:g}")
        if self.b.lam:
            parts.append(f"rho^{self.b.lam:g}")
        for f in self.omegas:
            parts.append(f"w[{f.gamma.lam:g}]^{f.power:g}")
        for f in self.omega_bigs:
            parts.append(f"W[{f.gamma1.lam:g},{f.gamma2.lam:g}]^{f.power:g}")
        return "*".join(parts) or "1"


def _gamma(x) -> ExponentPair:
    if isinstance(x, (ExponentPair, tuple)):
        return _as_pair(x)
    return ExponentPair(x, 0.0)


def monomial(a=0.0, b=0.0, omegas=(), omega_bigs=(), r0=1.0) -> GeneralMonomial:
    """Convenience constructor.

    Plain numbers for a, b become constant exponent pairs and tuples
    are read as (lam, lam0); plain numbers for
    compensator parameters gamma become (gamma, 0).  omegas are (gamma, c)
    tuples and omega_bigs are (gamma1, gamma2, d) tuples.
    """
    oms = tuple(f if isinstance(f, OmegaFactor) else OmegaFactor(_gamma(f[0]), f[1]) for f in omegas)
    bigs = tuple(
        f if isinstance(f, OmegaBigFactor) else OmegaBigFactor(_gamma(f[0]), _gamma(f[1]), f[2]) for f in omega_bigs
    )
    return GeneralMonomial(_as_pair(a), _as_pair(b), oms, bigs, r0)


def combine(pairs) -> list:
    """Collect equal monomials in a list of (coefficient, monomial); drop zeros."""
    acc: dict = {}
    order = []
    for c, m in pairs:
        if m not in acc:
            acc[m] = 0.0
            order.append(m)
        acc[m] += c
    return [(acc[m], m) for m in order if acc[m] != 0.0]


def lie_monomial(M: GeneralMonomial) -> list:
    """L_X M as an exact list of (coefficient, monomial)."""
    out = [(M.divisor(), M)]
    for f in M.omegas:
        # c M / omega_g * (-(1 + g omega_g)): the g-part is already in divisor()
        drop = GeneralMonomial(omegas=(OmegaFactor(f.gamma, -1.0),), r0=M.r0)
        out.append((-f.power, M * drop))
    for f in M.omega_bigs:
        swap = GeneralMonomial(
            omegas=(OmegaFactor(f.gamma1, 1.0),),
            omega_bigs=(OmegaBigFactor(f.gamma1, f.gamma2, -1.0),),
            r0=M.r0,
        )
        out.append((-f.power, M * swap))
    return combine(out)


def lie_pairs(pairs) -> list:
    """L_X of a finite combination of monomials."""
    out = []
    for c, m in pairs:
        out.extend((c * k, mm) for k, mm in lie_monomial(m))
    return combine(out)


def evaluate_pairs(pairs, r, rho):
    total = np.zeros(np.broadcast(np.asarray(r), np.asarray(rho)).shape)
    for c, m in pairs:
        total = total + c * m.evaluate(r, rho)
    return total


def reduce_mod_nu(M: GeneralMonomial):
    """Split M = nu^b * reduced(r) on the leaf r rho = nu; returns (b, reduced)."""
    reduced = GeneralMonomial(M.a - M.b, ZERO, M.omegas, M.omega_bigs, M.r0)
    return M.b.lam, reduced


def is_resonant_pair(Mi: GeneralMonomial, Mj: GeneralMonomial) -> bool:
    """True when a_j0 - a_i0 - b_j0 + b_i0 vanishes."""
    return abs(Mj.p.lam0 - Mi.p.lam0) <= LAM0_ATOL


__all__ = [
    "ExponentPair",
    "OmegaFactor",
    "OmegaBigFactor",
    "GeneralMonomial",
    "monomial",
    "combine",
    "lie_monomial",
    "lie_pairs",
    "evaluate_pairs",
    "reduce_mod_nu",
    "is_resonant_pair",
    "ZERO",
]
