"""Named property checks shared by the `suite` command and the acceptance tests.

Every check returns a list of records {name, computed, reference, tolerance,
pass}.  Records never hold timings, so a fixed seed gives identical reports.
"""

from __future__ import annotations

import math

import numpy as np
import sympy as sp

from . import blowup, compensator, dulac, verify
from .monomial_algebra import (
    GeneralMonomial,
    certify,
    count_roots_leaf,
    make_template,
)
from .monomial_algebra.monomial import ExponentPair, OmegaBigFactor, OmegaFactor, evaluate_pairs, lie_monomial
from .monomial_algebra.random_sums import random_nonresonant_sum, random_p_1, random_p_geq_2
from .normal_form import SigmaClass, max_nonresonant, normalize, push_forward, random_field


def record(name, computed, reference, tolerance, ok, **extra) -> dict:
    out = {
        "name": name,
        "computed": _plain(computed),
        "reference": _plain(reference),
        "tolerance": _plain(tolerance),
        "pass": bool(ok),
    }
    out.update({k: _plain(v) for k, v in extra.items()})
    return out


def _plain(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    if isinstance(x, sp.Basic):
        return str(x)
    return x


# 1. bound soundness


def check_bound_sweep(rng, n: int = 500, grid: int = 1024) -> list:
    worst_excess = -10**9
    violations = 0
    leaves = 0
    max_count = 0
    for _ in range(n):
        V, dom = random_nonresonant_sum(rng)
        bound = certify(V).bound
        for nu in dom.nu_list:
            c = count_roots_leaf(V, nu, dom.r_min, dom.r_max, grid=grid, rho_max=dom.rho_max)
            leaves += 1
            max_count = max(max_count, c.count)
            worst_excess = max(worst_excess, c.count - bound)
            if c.count > bound:
                violations += 1
    return [
        record("bound sweep: leaves with count > bound", violations, 0, 0, violations == 0,
               instances=n, leaves=leaves, max_count=max_count, worst_excess=worst_excess),
        record("bound sweep: leaves per instance", leaves / n, 5, 0, leaves >= 5 * n),
    ]


# 2. resonant boundary templates


def check_templates(rng, n: int = 100, grid: int = 1024) -> list:
    out = []
    for name, gen, expect in (("p >= 2", random_p_geq_2, 3), ("p = 1", random_p_1, 2)):
        worst = 0
        bounds = set()
        for _ in range(n):
            V, dom = gen(rng)
            bounds.add(certify(V).bound)
            for nu in dom.nu_list:
                c = count_roots_leaf(V, nu, dom.r_min, dom.r_max, grid=grid, rho_max=dom.rho_max)
                worst = max(worst, c.count)
        out.append(record(f"template {name}: max root count", worst, expect, 0, worst <= expect, instances=n))
        out.append(record(f"template {name}: certificate bound", sorted(bounds), [expect], 0, bounds == {expect}))
    zero = make_template("BoundaryP1", eps0=0.0, eps1=0.0, mu_bar3=0.0)
    rc = count_roots_leaf(zero, 1e-6, 1e-4, 0.05)
    out.append(record("template all coefficients zero: identically zero", rc.identically_zero, True, 0, rc.identically_zero))
    return out


# 3. compensators


def _random_monomial(rng) -> GeneralMonomial:
    a = float(rng.uniform(-1, 2))
    b = float(rng.uniform(0, 2))
    oms = []
    if rng.random() < 0.7:
        oms.append(OmegaFactor(ExponentPair(float(rng.uniform(-0.2, 0.2)), 0.0), float(rng.choice([1, 2, -1]))))
    bigs = []
    if rng.random() < 0.4:
        g1, g2 = rng.uniform(-0.2, 0.2, 2)
        bigs.append(OmegaBigFactor(ExponentPair(float(g1), 0.0), ExponentPair(float(g2), 0.0), 1.0))
    return GeneralMonomial(ExponentPair(a, a), ExponentPair(b, b), tuple(oms), tuple(bigs), 1.0)


def lie_fd_residual(M: GeneralMonomial, r, rho, h: float = 1e-3) -> np.ndarray:
    """|L M - finite difference along the flow of r d/dr - rho d/drho|, relative to the term scale."""
    exact = evaluate_pairs(lie_monomial(M), r, rho)
    scale = sum(abs(c) * np.abs(m.evaluate(r, rho)) for c, m in lie_monomial(M)) + np.abs(M.evaluate(r, rho))

    def f(s):
        return M.evaluate(r * math.exp(s), rho * math.exp(-s))

    fd = (8 * (f(h) - f(-h)) - (f(2 * h) - f(-2 * h))) / (12 * h)
    return np.abs(fd - exact) / scale


def check_compensator(rng) -> list:
    out = []
    rs = np.geomspace(1e-3, 0.5, 20)
    R, RHO = np.meshgrid(rs, rs)
    worst = 0.0
    for _ in range(10):
        M = _random_monomial(rng)
        worst = max(worst, float(np.max(lie_fd_residual(M, R, RHO))))
    out.append(record("Lie rule vs finite differences, 10 monomials on 20x20 grid", worst, 0.0, 1e-6, worst < 1e-6))

    eta = np.linspace(-50, 50, 20001)
    k, k1, k2 = compensator.kappa(eta), compensator.kappa_prime(eta), compensator.kappa_second(eta)
    pos = eta > 0
    ok_order = bool(np.all(k1[pos] < k[pos]) and np.all(k[pos] < np.exp(eta[pos])))
    out.append(record("kappa' < kappa < e^eta for eta > 0", ok_order, True, 0, ok_order))
    ok_shape = bool(np.all(k > 0) and np.all(k1 > 0) and np.all(k2 > 0))
    out.append(record("kappa positive, increasing, convex on [-50, 50]", ok_shape, True, 0, ok_shape))

    worst = 0.0
    c = compensator
    for t in (c.KAPPA_SERIES_THRESHOLD, -c.KAPPA_SERIES_THRESHOLD):
        x = np.array([t])
        worst = max(worst, abs(c._kappa_series(x)[0] / c._kappa_direct(x)[0] - 1))
    for t in (c.DERIV_SERIES_THRESHOLD, -c.DERIV_SERIES_THRESHOLD):
        x = np.array([t])
        worst = max(worst, abs(c._kappa_prime_series(x)[0] / c._kappa_prime_direct(x)[0] - 1))
    for e0 in (-3.0, 0.0, 2.0):
        lo, hi = np.array([e0]), np.array([e0 + c.CALK_GL_WIDTH])
        worst = max(worst, abs(c._calK_gauss(hi, lo)[0] / c._calK_direct(hi, lo)[0] - 1))
        h = c.CALK_MIDPOINT_REL * (1 + abs(e0)) * 0.999
        lo, hi = np.array([e0]), np.array([e0 + h])
        worst = max(worst, abs(c._calK_midpoint(lo, hi)[0] / c._calK_gauss(hi, lo)[0] - 1))
    for xi in (0.3, 0.9):
        a = -math.log(xi)
        alpha = c.OMEGA_IDENTITY_THRESHOLD / a
        raw = (xi ** (-alpha) - 1) / alpha
        worst = max(worst, abs(c.omega(xi, alpha * (1 - 1e-9)) / raw - 1))
    out.append(record("branch switch consistency", worst, 0.0, 1e-12, worst < 1e-12))
    return out


# 4. normal forms


def check_normal_form(rng, n: int = 50, K: int = 6) -> list:
    out = []
    for s0 in (SigmaClass.irrational(math.sqrt(2)), SigmaClass.rational(3, 2), SigmaClass.integer(2)):
        worst = 0.0
        eta_bad = 0
        for _ in range(n):
            X = random_field(rng, s0, degree=6, sigma_shift=float(rng.uniform(-0.01, 0.01)))
            nf, change = normalize(X, K)
            worst = max(worst, max_nonresonant(push_forward(X, change), K))
            if s0.kind != "Integer" and any(v != 0 for v in nf.eta.values()):
                eta_bad += 1
        out.append(record(f"normal form {s0.kind}: max non-resonant coefficient", worst, 0.0, 1e-10, worst <= 1e-10))
        if s0.kind != "Integer":
            out.append(record(f"normal form {s0.kind}: eta identically zero", eta_bad, 0, 0, eta_bad == 0))
    return out


# 5. Dulac maps


def check_dulac() -> list:
    out = []
    cases = [
        dulac.DulacParams(SigmaClass.irrational(math.sqrt(2)), math.sqrt(2) + 0.01, r0=0.5, rho0=0.4, Y0=0.7),
        dulac.DulacParams(SigmaClass.rational(3, 2), 1.47, r0=1.0, rho0=0.5, Y0=-0.3),
        dulac.DulacParams(SigmaClass.integer(1), 1.02, r0=1.0, rho0=0.5, Y0=0.4),
    ]
    worst = 0.0
    for P in cases:
        for r in np.geomspace(1e-4, 1e-1, 4):
            a, b = dulac.dulac_type_II(r, 0.2, P), dulac.integrate_type_II(r, 0.2, P)
            worst = max(worst, abs(a - b) / abs(a))
        for nu in np.geomspace(1e-5, 1e-2, 4) * P.nu0 / 1e-2 * 0.9:
            a, b = dulac.dulac_type_I(0.6, nu, P), dulac.integrate_type_I(0.6, nu, P)
            worst = max(worst, abs(a - b) / abs(a))
    out.append(record("Dulac linear cases: closed vs integrated (rel)", worst, 0.0, 1e-10, worst < 1e-10))
    worst = 0.0
    for alpha in (0.05, 0.0, -0.05):
        P = dulac.DulacParams(SigmaClass.integer(1), 1 + alpha, eta=0.3, r0=1.0, rho0=0.2, Y0=0.25)
        for r in np.geomspace(1e-4, 1e-1, 4):
            a, b = dulac.dulac_type_II(r, 0.3, P), dulac.integrate_type_II(r, 0.3, P)
            worst = max(worst, abs(a - b) / abs(a))
        a, b = dulac.dulac_type_I(0.0, 0.1 * P.nu0, P), dulac.integrate_type_I(0.0, 0.1 * P.nu0, P)
        worst = max(worst, abs(a - b) / abs(a))
    out.append(record("Dulac integer inhomogeneous: closed vs integrated (rel)", worst, 0.0, 1e-9, worst < 1e-9))
    ratios = []
    for alpha in (0.05, 0.0, -0.05):
        P = dulac.DulacParams(SigmaClass.integer(1), 1 + alpha, eta=0.3, r0=1.0, rho0=1.0, Y0=0.5, Phi={(0, 1): 0.01})
        for r in np.geomspace(1e-4, 1e-1, 7):
            ratios.append(abs(dulac.phi_residual(r, 0.3, P)) / dulac.phi_envelope(r, P))
    P = dulac.DulacParams(SigmaClass.rational(3, 2), 1.52, r0=1.0, rho0=1.0, Y0=0.5, Phi={(0, 1): 0.01})
    for r in np.geomspace(1e-4, 1e-1, 7):
        ratios.append(abs(dulac.phi_residual(r, 0.3, P)) / dulac.phi_envelope(r, P))
    m = max(ratios)
    out.append(record("Dulac nonlinear Phi: residual / envelope bounded on [1e-4, 1e-1]", m, 1.0, 0, m <= 1.0))
    return out


# 6, 7. blow-up and invariant curves


def check_blowup() -> list:
    out = []
    worst = 0.0
    for a in (-0.5, -0.25, 0.25):
        ref = blowup.eigenvalue_table(a)
        for pt in blowup.singular_points_on_blowup(a, mu_bar=(0.6, 0.0, 0.8), eta=0.3):
            worst = max(worst, max(abs(x - y) for x, y in zip(pt.eigenvalues, ref[pt.label])))
    out.append(record("blow-up eigenvalues from Jacobians", worst, 0.0, 1e-10, worst < 1e-10))
    a, m1, m2, m3, eta = sp.symbols("a mu1 mu2 mu3 eta")
    zero = all(blowup.blown_up_chart(c, a, (m1, m2, m3), eta).foliation_defect() == 0 for c in blowup.CHARTS)
    out.append(record("r rho invariant: exact zero polynomial on every chart", zero, True, 0, zero))
    return out


def check_invariant_curves() -> list:
    out = []
    ok = True
    printed_ok = True
    for B in (1.5, 0.75, 1.3, 2.0):
        for mu5 in (0.0, 0.2, -0.35):
            fam = blowup.QuadraticFamily(B, (0, 0, 0, 0, mu5))
            ok &= blowup.is_identically_zero(blowup.parabola_defect(fam, blowup.invariant_parabola(B, mu5)))
            printed_ok &= blowup.is_identically_zero(
                blowup.parabola_defect(fam, blowup.invariant_parabola(B, mu5, as_printed=True))
            )
    out.append(record("invariant parabola: defect is the zero polynomial", ok, True, 0, ok))
    out.append(record("parabola with the printed mu5^2 constant: zero defect (informational)", printed_ok, False, 0,
                      True, informational=True))
    ok = True
    for B, mu5 in ((1.5, 0.1), (1.0, 0.2), (0.75, -0.3)):
        mu3 = (1 - 2 * B) * mu5
        fam = blowup.QuadraticFamily(B, (0.0, 0.05, mu3, 0.02, mu5))
        ok &= blowup.invariant_line_residual(fam) == 0.0 and blowup.is_identically_zero(blowup.line_defect(fam))
    out.append(record("invariant line y = -1: defect is the zero polynomial", ok, True, 0, ok))
    ok = True
    for mu5 in (0.0, 0.3, -0.1):
        fam = blowup.QuadraticFamily(1.0, (0, 0, 0, 0, mu5), "UnfoldB1")
        ok &= blowup.is_identically_zero(blowup.parabola_defect(fam, (sp.Rational(1, 2), 0, -sp.Rational(1, 2))))
    out.append(record("B = 1 parabola y = x^2/2 - 1/2: defect is the zero polynomial", ok, True, 0, ok))
    return out


# 8. section-map integrals


def check_appendix3(rng) -> list:
    return verify.integrals_report(rng)


# 9. center configuration


def check_center() -> list:
    P = dulac.DulacParams(SigmaClass.irrational(math.sqrt(2)), math.sqrt(2) + 0.02, r0=1.0, rho0=1.0, Y0=0.8)
    V = dulac.compose_boundary_displacement(
        dulac.type_II_map(P), dulac.type_II_map(P), dulac.regular_S(lambda r, rho: 1.0), dulac.regular_T(lambda Y: Y)
    )
    grid = np.geomspace(1e-4, 0.5, 10)
    worst = max(abs(V(r, rho)) for r in grid for rho in grid)
    out = [record("center configuration: max |V| on 10x10 grid", worst, 0.0, 1e-12, worst < 1e-12)]
    T = make_template("BoundaryIrrational", eps0=0.0, eps1=0.0, mu_bar3=0.0)
    rc = count_roots_leaf(T, 1e-6, 1e-4, 0.5)
    z = T.identically_zero and rc.identically_zero
    out.append(record("BoundaryIrrational with zero center-ideal coefficients: identically zero", z, True, 0, z))
    return out


CRITERIA = {
    1: "bound soundness sweep",
    2: "boundary templates",
    3: "compensator suite",
    4: "normal form",
    5: "Dulac validation",
    6: "blow-up eigenvalues and foliation",
    7: "invariant curves",
    8: "section-map integrals",
    9: "center consistency",
}


def run_criterion(k: int, rng, sweep: int = 500, templates: int = 100, nf: int = 50, grid: int = 1024) -> list:
    if k == 1:
        return check_bound_sweep(rng, sweep, grid)
    if k == 2:
        return check_templates(rng, templates, grid)
    if k == 3:
        return check_compensator(rng)
    if k == 4:
        return check_normal_form(rng, nf)
    if k == 5:
        return check_dulac()
    if k == 6:
        return check_blowup()
    if k == 7:
        return check_invariant_curves()
    if k == 8:
        return check_appendix3(rng)
    if k == 9:
        return check_center()
    raise KeyError(k)


def child_rng(seed: int, k: int) -> np.random.Generator:
    """Independent counter-based stream per criterion."""
    return np.random.Generator(np.random.Philox(key=seed, counter=k))


__all__ = ["record", "run_criterion", "child_rng", "CRITERIA", "lie_fd_residual"]
