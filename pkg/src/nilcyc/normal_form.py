"""Resonant polynomial normal form for u' = u, v' = -v, y' = -sigma y + F(u, v, y).

A change y = z + h(u, v, z) tangent to the identity turns the third
component into

    z' = [-sigma (z + h) + F(u, v, z + h) - u h_u + v h_v] / (1 + h_z).

To first order a monomial a u^i v^j z^l in h shifts the coefficient of the
same monomial in z' by -delta a, with delta = i - j - sigma (l - 1).  So,
degree by degree, every coefficient with delta != 0 is removed by a = g / delta.

What survives is grouped with nu = u v and w = u^p z^q as

    Z' = -(sigma + phi(nu)) Z + Phi(nu, w) Z + v^p eta(nu),

where eta appears only for integer sigma0 = p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .errors import DegreeOverflow, ParamError, ResonanceError

DEFAULT_DEGREE = 6
MAX_DEGREE = 10
FLOAT_DIVISOR_GUARD = 1e-9

KINDS = ("IrrationalLike", "Rational", "Integer")


@dataclass(frozen=True)
class SigmaClass:
    kind: str
    value: float | None = None
    p: int | None = None
    q: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParamError(f"unknown sigma class {self.kind!r}")
        if self.kind == "IrrationalLike":
            if self.value is None or not self.value > 0:
                raise ParamError("IrrationalLike needs a positive value")
            object.__setattr__(self, "value", float(self.value))
        elif self.kind == "Rational":
            if self.p is None or self.q is None or self.q <= 1 or self.p <= 0 or gcd(self.p, self.q) != 1:
                raise ParamError("Rational needs coprime p > 0, q > 1")
            object.__setattr__(self, "value", self.p / self.q)
        else:
            if self.p is None or self.p <= 0:
                raise ParamError("Integer needs p > 0")
            object.__setattr__(self, "q", 1)
            object.__setattr__(self, "value", float(self.p))

    @classmethod
    def irrational(cls, value: float) -> "SigmaClass":
        return cls("IrrationalLike", value)

    @classmethod
    def rational(cls, p: int, q: int) -> "SigmaClass":
        return cls("Rational", None, p, q)

    @classmethod
    def integer(cls, p: int) -> "SigmaClass":
        return cls("Integer", None, p)

    @property
    def exact(self) -> Fraction | None:
        if self.kind == "IrrationalLike":
            return None
        return Fraction(self.p, self.q)

    def to_dict(self) -> dict:
        if self.kind == "IrrationalLike":
            return {"kind": "irrational", "value": self.value}
        return {"kind": self.kind.lower(), "p": self.p, "q": self.q}

    @classmethod
    def from_dict(cls, d: dict) -> "SigmaClass":
        kind = str(d.get("kind", "")).lower()
        if kind in ("irrational", "irrationallike"):
            return cls.irrational(d["value"])
        if kind == "rational":
            return cls.rational(int(d["p"]), int(d["q"]))
        if kind == "integer":
            return cls.integer(int(d["p"]))
        raise ParamError(f"unknown sigma class {d.get('kind')!r}")


def resonance_divisor(i: int, j: int, l: int, sigma0: SigmaClass):
    """delta = i - j - sigma0 (l - 1); exact Fraction for rational classes."""
    ex = sigma0.exact
    if ex is None:
        return i - j - sigma0.value * (l - 1)
    return Fraction(i - j) - ex * (l - 1)


def is_resonant(i: int, j: int, l: int, sigma0: SigmaClass) -> bool:
    if sigma0.kind == "IrrationalLike":
        # sigma0 declared irrational: i - j = sigma0 (l - 1) forces l = 1, i = j
        return l == 1 and i == j
    return resonance_divisor(i, j, l, sigma0) == 0


def triples(K: int, min_degree: int = 2):
    for d in range(min_degree, K + 1):
        for i in range(d, -1, -1):
            for j in range(d - i, -1, -1):
                yield (i, j, d - i - j)


def resonance_set(sigma0: SigmaClass, K: int) -> list:
    """Resonant (i, j, l) with i + j + l <= K, the linear z term excluded."""
    if K < 2:
        raise ParamError("K must be at least 2")
    out = [t for t in triples(K, 1) if t != (0, 0, 1) and is_resonant(*t, sigma0)]
    return sorted(out, key=lambda t: (sum(t), t))


# -- truncated trivariate polynomials as dense (K+1)^3 arrays ------------------


def _mask(K: int) -> np.ndarray:
    idx = np.indices((K + 1,) * 3).sum(axis=0)
    return idx <= K


def _zeros(K):
    return np.zeros((K + 1,) * 3)


def _mul(A, B, K, mask):
    C = _zeros(K)
    for i, j, l in zip(*np.nonzero(A)):
        n = K + 1
        C[i:, j:, l:] += A[i, j, l] * B[: n - i, : n - j, : n - l]
    C[~mask] = 0.0
    return C


def _from_dict(coeffs: dict, K: int) -> np.ndarray:
    A = _zeros(K)
    for (i, j, l), c in coeffs.items():
        if i + j + l <= K:
            A[i, j, l] += c
    return A


def _to_dict(A: np.ndarray, tol: float = 0.0) -> dict:
    return {(int(i), int(j), int(l)): float(A[i, j, l]) for i, j, l in zip(*np.nonzero(np.abs(A) > tol))}


@dataclass(frozen=True)
class QuasiLinearField3:
    sigma: float
    sigma0: SigmaClass
    F: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, c in self.F.items():
            i, j, l = (int(x) for x in key)
            if min(i, j, l) < 0:
                raise ParamError("negative exponent in F")
            if i + j + l < 2 and c != 0:
                raise ParamError("F must have no constant or linear part")
            if c != 0:
                clean[(i, j, l)] = clean.get((i, j, l), 0.0) + float(c)
        object.__setattr__(self, "F", clean)
        object.__setattr__(self, "sigma", float(self.sigma))

    @property
    def degree(self) -> int:
        return max((sum(k) for k in self.F), default=0)


@dataclass(frozen=True)
class CoordinateChange:
    coeffs: dict
    K: int

    @classmethod
    def identity(cls, K: int) -> "CoordinateChange":
        return cls({}, K)

    def __post_init__(self):
        for key in self.coeffs:
            if sum(key) < 2:
                raise ParamError("a coordinate change must be tangent to the identity")


@dataclass(frozen=True)
class ResonantNormalForm:
    phi: dict
    Phi: dict
    eta: dict
    degree: int
    sigma: float
    sigma0: SigmaClass
    resonant: dict = field(default_factory=dict)

    def __post_init__(self):
        if any(k == 0 for _, k in self.Phi):
            raise ValueError("Phi(nu, 0) must vanish")
        if self.sigma0.kind != "Integer" and any(c != 0 for c in self.eta.values()):
            raise ValueError("eta vanishes unless sigma0 is an integer")


def _check_K(K: int):
    if K > MAX_DEGREE:
        raise DegreeOverflow(f"degree {K} exceeds the maximum {MAX_DEGREE}")
    if K < 2:
        raise ParamError("K must be at least 2")


def _transformed(sigma: float, Farr: np.ndarray, H: np.ndarray, K: int, mask) -> np.ndarray:
    """Coefficients of z' (linear part included) after y = z + h."""
    n = K + 1
    Y = H.copy()
    Y[0, 0, 1] += 1.0
    # F(u, v, z + h) = sum_l [sum_ij c_ijl u^i v^j] Y^l
    out = _zeros(K)
    Ypow = _zeros(K)
    Ypow[0, 0, 0] = 1.0
    for l in range(K + 1):
        coeff_l = Farr[:, :, l]
        if np.any(coeff_l):
            for i, j in zip(*np.nonzero(coeff_l)):
                out[i:, j:, :] += coeff_l[i, j] * Ypow[: n - i, : n - j, :]
        if l < K:
            Ypow = _mul(Ypow, Y, K, mask)
    out[~mask] = 0.0
    ii, jj, ll = np.indices(H.shape)
    # -sigma (z + h) - u h_u + v h_v
    out += -sigma * Y - ii * H + jj * H
    # divide by 1 + h_z
    Hz = _zeros(K)
    Hz[:, :, :-1] = H[:, :, 1:] * ll[:, :, 1:]
    inv = _zeros(K)
    inv[0, 0, 0] = 1.0
    term = inv.copy()
    for _ in range(K):
        term = -_mul(term, Hz, K, mask)
        if not np.any(term):
            break
        inv += term
    res = _mul(out, inv, K, mask)
    res[~mask] = 0.0
    return res


def push_forward(X: QuasiLinearField3, C: CoordinateChange) -> QuasiLinearField3:
    """The field in the new coordinate z, truncated at degree C.K."""
    K = C.K
    _check_K(K)
    mask = _mask(K)
    G = _transformed(X.sigma, _from_dict(X.F, K), _from_dict(C.coeffs, K), K, mask)
    G[0, 0, 1] += X.sigma
    return QuasiLinearField3(X.sigma, X.sigma0, _to_dict(G))


def inverse_change(C: CoordinateChange) -> CoordinateChange:
    """The truncated inverse z = y + k(u, v, y) of y = z + h(u, v, z)."""
    K = C.K
    _check_K(K)
    mask = _mask(K)
    H = _from_dict(C.coeffs, K)
    k = _zeros(K)
    for _ in range(K):
        # k = -h(u, v, y + k)
        Y = k.copy()
        Y[0, 0, 1] += 1.0
        n = K + 1
        new = _zeros(K)
        Ypow = _zeros(K)
        Ypow[0, 0, 0] = 1.0
        for l in range(K + 1):
            cl = H[:, :, l]
            for i, j in zip(*np.nonzero(cl)):
                new[i:, j:, :] -= cl[i, j] * Ypow[: n - i, : n - j, :]
            if l < K:
                Ypow = _mul(Ypow, Y, K, mask)
        new[~mask] = 0.0
        if np.allclose(new, k, rtol=0, atol=0):
            break
        k = new
    return CoordinateChange(_to_dict(k), K)


def _elimination_divisor(i, j, l, sigma):
    return i - j - sigma * (l - 1)


def normalize(X: QuasiLinearField3, K: int = DEFAULT_DEGREE):
    """Order-by-order normal form through degree K; returns (normal form, change)."""
    _check_K(K)
    mask = _mask(K)
    Farr = _from_dict(X.F, K)
    H = _zeros(K)
    for d in range(2, K + 1):
        G = _transformed(X.sigma, Farr, H, K, mask)
        for i, j, l in triples(d, d):
            if is_resonant(i, j, l, X.sigma0):
                continue
            g = G[i, j, l]
            if g == 0.0:
                continue
            delta = _elimination_divisor(i, j, l, X.sigma)
            if abs(delta) < FLOAT_DIVISOR_GUARD:
                raise ResonanceError(f"near-resonant divisor {delta:g} at {(i, j, l)}", pair=(i, j, l))
            H[i, j, l] = g / delta
    G = _transformed(X.sigma, Farr, H, K, mask)
    change = CoordinateChange(_to_dict(H), K)
    return _group(G, X, K), change


def _group(G: np.ndarray, X: QuasiLinearField3, K: int) -> ResonantNormalForm:
    s0 = X.sigma0
    p, q = (s0.p, s0.q) if s0.kind != "IrrationalLike" else (None, None)
    phi, Phi, eta, res = {}, {}, {}, {}
    for i, j, l in resonance_set(s0, K):
        c = float(G[i, j, l])
        res[(i, j, l)] = c
        if l == 1 and i == j:
            phi[i] = -c
        elif l == 0:
            # integer case only: u^i v^(i+p) = nu^i v^p
            eta[i] = c
        else:
            k = (l - 1) // q
            Phi[(j, k)] = c
            assert i == p * k + j
    return ResonantNormalForm(phi, Phi, eta, K, X.sigma, s0, res)


def max_nonresonant(X: QuasiLinearField3, K: int) -> float:
    """Largest |coefficient| of a non-resonant monomial of degree 2..K in X."""
    worst = 0.0
    for key, c in X.F.items():
        if 2 <= sum(key) <= K and not is_resonant(*key, X.sigma0):
            worst = max(worst, abs(c))
    return worst


def random_field(rng: np.random.Generator, sigma0: SigmaClass, degree: int = 6, sigma_shift: float = 0.0):
    F = {t: float(rng.uniform(-1, 1)) for t in triples(degree)}
    return QuasiLinearField3(sigma0.value + sigma_shift, sigma0, F)


def field_to_dict(X: QuasiLinearField3) -> dict:
    return {
        "sigma": X.sigma,
        "sigma0": X.sigma0.to_dict(),
        "F": {f"{i},{j},{l}": c for (i, j, l), c in sorted(X.F.items())},
    }


def field_from_dict(d: dict) -> QuasiLinearField3:
    F = {}
    for key, c in d.get("F", {}).items():
        F[tuple(int(x) for x in key.split(","))] = float(c)
    return QuasiLinearField3(float(d["sigma"]), SigmaClass.from_dict(d["sigma0"]), F)


def normal_form_to_dict(nf: ResonantNormalForm, change: CoordinateChange | None = None) -> dict:
    out = {
        "degree": nf.degree,
        "sigma": nf.sigma,
        "sigma0": nf.sigma0.to_dict(),
        "phi": {str(m): c for m, c in sorted(nf.phi.items())},
        "Phi": {f"{m},{k}": c for (m, k), c in sorted(nf.Phi.items())},
        "eta": {str(m): c for m, c in sorted(nf.eta.items())},
    }
    if change is not None:
        out["change"] = {f"{i},{j},{l}": c for (i, j, l), c in sorted(change.coeffs.items())}
    return out


__all__ = [
    "SigmaClass",
    "QuasiLinearField3",
    "CoordinateChange",
    "ResonantNormalForm",
    "resonance_divisor",
    "resonance_set",
    "is_resonant",
    "normalize",
    "push_forward",
    "inverse_change",
    "max_nonresonant",
    "random_field",
    "field_to_dict",
    "field_from_dict",
    "normal_form_to_dict",
]
