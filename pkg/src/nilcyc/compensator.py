"""Compensators and their helper functions.

The basic object is

    kappa(eta) = (e^eta - 1) / eta,        kappa(0) = 1,

an entire function with kappa(eta) = integral_0^1 e^(s eta) ds.  Everything
else is built on it:

    theta(t, alpha)        = t * kappa(alpha t)                 = (e^(alpha t) - 1) / alpha
    omega(xi, alpha)       = -kappa(-alpha ln xi) ln xi          = (xi^-alpha - 1) / alpha
    calK(eta, delta)       = (kappa(eta) - kappa(delta)) / (eta - delta)
    omega_big(xi, a, b)    = calK(-a ln xi, -b ln xi) ln^2 xi    = (omega(xi,a) - omega(xi,b)) / (a - b)

All functions accept scalars or numpy arrays and return the same kind.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

# |eta| below which kappa uses its Taylor series.
KAPPA_SERIES_THRESHOLD = 1e-3
# |eta| below which kappa', kappa'', kappa''' use their Taylor series.
DERIV_SERIES_THRESHOLD = 0.5
# calK: midpoint form when |eta - delta| < CALK_MIDPOINT_REL * (1 + |eta|).
CALK_MIDPOINT_REL = 1e-6
# calK: Gauss-Legendre on kappa' while |eta - delta| <= CALK_GL_WIDTH.
CALK_GL_WIDTH = 1.0
# omega: kappa identity when |alpha ln xi| < OMEGA_IDENTITY_THRESHOLD.
OMEGA_IDENTITY_THRESHOLD = 1e-3

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _wrap(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _unwrap(out, scalar):
    return float(out) if scalar else out


def _series(eta, order, n_terms):
    """Taylor series of the order-th derivative of kappa.

    kappa^(k)(eta) = sum_m eta^m / (m! (m + k + 1)).
    """
    total = np.zeros_like(eta)
    power = np.ones_like(eta)
    fact = 1.0
    for m in range(n_terms):
        if m:
            power = power * eta
            fact *= m
        total = total + power / (fact * (m + order + 1))
    return total


def _kappa_series(eta):
    # degree-12 Taylor polynomial; exact to double precision for |eta| < 1e-3
    return _series(eta, 0, 13)


def _kappa_direct(eta):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.expm1(eta) / eta


def kappa(eta):
    """(e^eta - 1)/eta, continuous at 0 with value 1."""
    eta, scalar = _wrap(eta)
    small = np.abs(eta) < KAPPA_SERIES_THRESHOLD
    out = np.where(small, _kappa_series(np.where(small, eta, 0.0)), _kappa_direct(np.where(small, 1.0, eta)))
    return _unwrap(out, scalar)


def _kappa_prime_series(eta):
    return _series(eta, 1, 30)


def _kappa_prime_direct(eta):
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return (eta * np.exp(eta) - np.expm1(eta)) / eta**2


def kappa_prime(eta):
    """Derivative of kappa: (eta e^eta - e^eta + 1)/eta^2, equal to 1/2 at 0."""
    eta, scalar = _wrap(eta)
    small = np.abs(eta) < DERIV_SERIES_THRESHOLD
    out = np.where(
        small,
        _kappa_prime_series(np.where(small, eta, 0.0)),
        _kappa_prime_direct(np.where(small, 1.0, eta)),
    )
    return _unwrap(out, scalar)


def _kappa_second_direct(eta):
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return ((eta**2 - 2 * eta + 2) * np.exp(eta) - 2) / eta**3


def kappa_second(eta):
    """Second derivative of kappa, equal to 1/3 at 0."""
    eta, scalar = _wrap(eta)
    small = np.abs(eta) < DERIV_SERIES_THRESHOLD
    out = np.where(
        small,
        _series(np.where(small, eta, 0.0), 2, 30),
        _kappa_second_direct(np.where(small, 1.0, eta)),
    )
    return _unwrap(out, scalar)


def _kappa_third_direct(eta):
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return ((eta**3 - 3 * eta**2 + 6 * eta - 6) * np.exp(eta) + 6) / eta**4


def kappa_third(eta):
    """Third derivative of kappa, equal to 1/4 at 0."""
    eta, scalar = _wrap(eta)
    small = np.abs(eta) < 2 * DERIV_SERIES_THRESHOLD
    out = np.where(
        small,
        _series(np.where(small, eta, 0.0), 3, 34),
        _kappa_third_direct(np.where(small, 1.0, eta)),
    )
    return _unwrap(out, scalar)


def _calK_midpoint(eta, delta):
    mid = 0.5 * (eta + delta)
    h = eta - delta
    return kappa_prime(mid) + kappa_third(mid) * h * h / 24.0


def _calK_gauss(eta, delta):
    # calK(eta, delta) = integral_0^1 kappa'(delta + s (eta - delta)) ds
    s = 0.5 * (_GL_NODES + 1.0)
    pts = delta[..., None] + s * (eta - delta)[..., None]
    return 0.5 * np.sum(_GL_WEIGHTS * kappa_prime(pts), axis=-1)


def _calK_direct(eta, delta):
    with np.errstate(invalid="ignore", divide="ignore"):
        return (kappa(eta) - kappa(delta)) / (eta - delta)


def calK(eta, delta):
    """Symmetric divided difference of kappa; calK(eta, eta) = kappa'(eta)."""
    eta, s1 = _wrap(eta)
    delta, s2 = _wrap(delta)
    eta, delta = np.broadcast_arrays(eta, delta)
    # order the pair so the result is bit-for-bit symmetric
    lo = np.minimum(eta, delta)
    hi = np.maximum(eta, delta)
    h = hi - lo
    near = h < CALK_MIDPOINT_REL * (1.0 + np.maximum(np.abs(lo), np.abs(hi)))
    mid = (~near) & (h <= CALK_GL_WIDTH)
    far = h > CALK_GL_WIDTH
    out = np.empty(lo.shape)
    if near.any():
        out[near] = _calK_midpoint(lo[near], hi[near])
    if mid.any():
        out[mid] = _calK_gauss(hi[mid], lo[mid])
    if far.any():
        out[far] = _calK_direct(hi[far], lo[far])
    return _unwrap(out, s1 and s2)


def theta(t, alpha):
    """(e^(alpha t) - 1)/alpha, equal to t when alpha = 0."""
    t, s1 = _wrap(t)
    alpha, s2 = _wrap(alpha)
    return _unwrap(t * kappa(alpha * t), s1 and s2)


def _check_xi(xi):
    if np.any(~(xi > 0)):
        raise DomainError("compensators need xi > 0")


def omega(xi, alpha):
    """The compensator (xi^-alpha - 1)/alpha, equal to -ln xi when alpha = 0."""
    xi, s1 = _wrap(xi)
    alpha, s2 = _wrap(alpha)
    _check_xi(xi)
    xi, alpha = np.broadcast_arrays(xi, alpha)
    log_xi = np.log(xi)
    eta = -alpha * log_xi
    via_kappa = np.abs(eta) < OMEGA_IDENTITY_THRESHOLD
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        raw = (xi ** (-alpha) - 1.0) / np.where(via_kappa, 1.0, alpha)
    out = np.where(via_kappa, -kappa(np.where(via_kappa, eta, 0.0)) * log_xi, raw)
    return _unwrap(out, s1 and s2)


def omega_big(xi, alpha, beta):
    """Second compensator (omega(xi,alpha) - omega(xi,beta))/(alpha - beta).

    Equal to (ln xi)^2 / 2 when alpha = beta = 0; symmetric in (alpha, beta).
    """
    xi, s1 = _wrap(xi)
    alpha, s2 = _wrap(alpha)
    beta, s3 = _wrap(beta)
    _check_xi(xi)
    log_xi = np.log(xi)
    out = calK(-alpha * log_xi, -beta * log_xi) * log_xi**2
    return _unwrap(np.asarray(out, dtype=float), s1 and s2 and s3)


def omega_upper_bound(xi, alpha):
    """The bound -ln xi (alpha <= 0) or -xi^-alpha ln xi (alpha >= 0)."""
    xi = np.asarray(xi, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    log_xi = np.log(xi)
    return np.where(alpha <= 0, -log_xi, -(xi ** (-alpha)) * log_xi)


def evaluate(name: str, **kwargs) -> float:
    """Dispatch by name; used by the command-line front end."""
    funcs = {
        "kappa": (kappa, ("eta",)),
        "kappa_prime": (kappa_prime, ("eta",)),
        "calK": (calK, ("eta", "delta")),
        "theta": (theta, ("t", "alpha")),
        "omega": (omega, ("xi", "alpha")),
        "omega_big": (omega_big, ("xi", "alpha", "beta")),
    }
    if name not in funcs:
        raise KeyError(f"unknown compensator function {name!r}")
    fn, args = funcs[name]
    missing = [a for a in args if a not in kwargs]
    if missing:
        raise TypeError(f"{name} needs arguments {', '.join(missing)}")
    return float(fn(*(kwargs[a] for a in args)))


__all__ = [
    "kappa",
    "kappa_prime",
    "kappa_second",
    "kappa_third",
    "calK",
    "theta",
    "omega",
    "omega_big",
    "omega_upper_bound",
    "evaluate",
]
