"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or
configuration errors.  Reports are JSON; trajectories and tables are CSV.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__, blowup, checks, compensator, dulac, verify
from .errors import NilcycError, SchemaError
from .monomial_algebra import (
    LeafDomain,
    MonomialSum,
    certificate_to_dict,
    certify,
    count_roots_leaf,
    make_template,
    sum_from_dict,
    sum_to_dict,
)
from .monomial_algebra.io import SCHEMA_VERSION
from .normal_form import QuasiLinearField3, field_from_dict, max_nonresonant, normal_form_to_dict, normalize, push_forward

CSV_HELP = """CSV columns:
  portrait: trajectory, t, u, v  (u, v are (xbar, ybar) or (x, y); negative t is backward time)
  dulac compare: kind, r, rho, nu, Y_in, closed, integrated, abs_diff
"""


# spec parsing


def _load(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SchemaError(f"cannot read spec: {e}", "") from e
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}", "") from e
    if not isinstance(d, dict):
        raise SchemaError("spec must be a JSON object", "")
    return d


def _family_from_dict(d: dict) -> blowup.QuadraticFamily:
    if "B" not in d:
        raise SchemaError("missing field 'B'", "/B")
    mu = d.get("mu", [0.0] * 5)
    if not isinstance(mu, list) or len(mu) != 5:
        raise SchemaError("mu must be a list (mu0, mu2, mu3, mu4, mu5)", "/mu")
    for k, m in enumerate(mu):
        if isinstance(m, bool) or not isinstance(m, (int, float)):
            raise SchemaError("expected a number", f"/mu/{k}")
    if d["variant"] not in blowup.VARIANTS:
        raise SchemaError(f"variant must be one of {', '.join(blowup.VARIANTS)}", "/variant")
    try:
        return blowup.QuadraticFamily.from_dict(d)
    except NilcycError as e:
        raise SchemaError(str(e), "/mu") from e


def _dulac_from_dict(d: dict) -> dulac.DulacParams:
    if "sigma_class" not in d:
        raise SchemaError("missing field 'sigma_class'", "/sigma_class")
    try:
        return dulac.DulacParams.from_dict(d)
    except (NilcycError, KeyError, TypeError, ValueError) as e:
        raise SchemaError(str(e), "/sigma_class") from e


def _field_from_dict(d: dict) -> QuasiLinearField3:
    try:
        return field_from_dict(d)
    except (NilcycError, KeyError, TypeError, ValueError) as e:
        raise SchemaError(str(e), "/F") from e


def parse_dict(d: dict):
    """Validated domain object from a spec dictionary, chosen by its keys."""
    if "terms" in d:
        return sum_from_dict(d)
    if "template" in d:
        t = d["template"]
        kind = t if isinstance(t, str) else t.get("kind")
        params = d.get("params", {} if isinstance(t, str) else t.get("params", {}))
        try:
            V = make_template(kind, params)
        except NilcycError as e:
            raise SchemaError(str(e), "/template") from e
        if "domain" in d:
            dom = sum_from_dict({"terms": [{"coeff": 1.0}], "domain": d["domain"]}).meta["domain"]
            V = MonomialSum(V.terms, V.mode, {**V.meta, "domain": dom})
        return V
    if "variant" in d:
        return _family_from_dict(d)
    if "sigma_bar" in d:
        return _dulac_from_dict(d)
    if "sigma0" in d and "F" in d:
        return _field_from_dict(d)
    raise SchemaError("unrecognized spec: expected terms, template, variant, sigma_bar or sigma0/F", "")


def parse_spec(path: str):
    return parse_dict(_load(path))


# reports


def _report(args, checks_list, **extra) -> dict:
    rep = {
        "tool": "nilcyc",
        "version": __version__,
        "schema_version": SCHEMA_VERSION,
        "config": {
            k: v
            for k, v in sorted(vars(args).items())
            if k not in ("func", "out", "csv") and v is not None and not callable(v)
        },
        "checks": checks_list,
    }
    rep.update(extra)
    return rep


def _default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (set, tuple)):
        return list(o)
    return str(o)


def _emit(args, rep: dict) -> int:
    text = json.dumps(rep, indent=2, default=_default, allow_nan=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if all(c.get("pass", True) for c in rep.get("checks", [])) else 1


def _nu_list(args, V: MonomialSum):
    if args.nu:
        return [float(x) for x in args.nu.split(",")]
    dom = V.meta.get("domain") or LeafDomain()
    return list(dom.nu_list)


# subcommands


def cmd_compensator(args) -> int:
    kw = {}
    for item in args.args:
        if "=" not in item:
            raise SchemaError(f"argument {item!r} must be name=value", "")
        k, v = item.split("=", 1)
        kw[k] = float(v)
    try:
        val = compensator.evaluate(args.name, **kw)
    except (KeyError, TypeError) as e:
        raise SchemaError(str(e), "") from e
    rec = checks.record(f"{args.name}({', '.join(args.args)})", val, None, None, math.isfinite(val))
    return _emit(args, _report(args, [rec]))


def cmd_bound(args) -> int:
    V = parse_spec(args.spec)
    if not isinstance(V, MonomialSum):
        raise SchemaError("bound needs a displacement-map spec", "")
    cert = certify(V)
    rec = checks.record("root bound", cert.bound, None, None, True, theorem=cert.theorem,
                        identically_zero=V.identically_zero)
    return _emit(args, _report(args, [rec], certificate=certificate_to_dict(cert), spec=sum_to_dict(V)))


def cmd_verify_bound(args) -> int:
    V = parse_spec(args.spec)
    if not isinstance(V, MonomialSum):
        raise SchemaError("verify-bound needs a displacement-map spec", "")
    cert = certify(V)
    dom = V.meta.get("domain") or LeafDomain()
    recs = []
    for nu in _nu_list(args, V):
        # the part of the leaf r rho = nu inside the domain box
        r_lo = dom.r_min if V.mode == "OneVar" else max(dom.r_min, nu / dom.rho_max)
        if not r_lo < dom.r_max:
            raise SchemaError(f"leaf nu={nu:g} misses the domain box", "/domain")
        rc = count_roots_leaf(V, nu, r_lo, dom.r_max, grid=args.grid, rho_max=dom.rho_max)
        recs.append(
            checks.record(f"leaf nu={nu:g}: root count <= bound", rc.count, cert.bound, 0, rc.count <= cert.bound,
                          roots=list(rc.roots), identically_zero=rc.identically_zero)
        )
    return _emit(args, _report(args, recs, certificate=certificate_to_dict(cert)))


def cmd_normalform(args) -> int:
    X = parse_spec(args.spec)
    if not isinstance(X, QuasiLinearField3):
        raise SchemaError("normalform needs a field spec with sigma, sigma0 and F", "")
    nf, change = normalize(X, args.degree)
    worst = max_nonresonant(push_forward(X, change), args.degree)
    tol = args.tol if args.tol is not None else 1e-10
    recs = [checks.record("max non-resonant coefficient after push-forward", worst, 0.0, tol, worst <= tol)]
    if X.sigma0.kind != "Integer":
        ok = all(v == 0 for v in nf.eta.values())
        recs.append(checks.record("eta identically zero", ok, True, 0, ok))
    return _emit(args, _report(args, recs, normal_form=normal_form_to_dict(nf, change)))


def _write_csv(path, header, rows):
    fh = open(path, "w", newline="") if path else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(x) + 0.0) if isinstance(x, (float, np.floating)) else x for x in row])
    finally:
        if path:
            fh.close()


def cmd_portrait(args) -> int:
    d = _load(args.spec)
    if "mu_bar" in d:
        try:
            F = blowup.family_rescaling_field(tuple(d["mu_bar"]), float(d["a"]))
        except (NilcycError, KeyError) as e:
            raise SchemaError(str(e), "/mu_bar") from e
    else:
        F = blowup.vector_field(_family_from_dict(d))
    initial = d.get("initial", [[0.5, 0.0], [0.0, 0.5], [-0.5, -0.5]])
    trajs = blowup.portrait(F, initial, float(d.get("t_max", 10.0)), int(d.get("n", 201)))
    rows = [(k, *row) for k, tr in enumerate(trajs) for row in tr]
    _write_csv(args.csv, ["trajectory", "t", "u", "v"], rows)
    if args.csv:
        rec = checks.record("trajectories written", len(trajs), None, None, True, path=args.csv)
        return _emit(args, _report(args, [rec], field=str(F)))
    return 0


def cmd_dulac(args) -> int:
    d = _load(args.spec)
    P = _dulac_from_dict(d)
    pts = d.get("points") or [[float(r), 0.3] for r in np.geomspace(1e-4, 1e-1, 7)]
    tol = args.tol if args.tol is not None else (1e-9 if not P.Phi else None)
    rows, recs = [], []
    for r, rho in pts:
        closed = dulac.dulac_type_II(r, rho, P)
        integ = dulac.integrate_type_II(r, rho, P)
        diff = abs(closed - integ)
        rows.append(("II", r, rho, r * rho, P.Y0, closed, integ, diff))
        if tol is not None:
            ok = diff <= tol * max(abs(closed), 1e-300)
            recs.append(checks.record(f"type II r={r:g} rho={rho:g}: closed vs integrated (rel)",
                                      diff / max(abs(closed), 1e-300), 0.0, tol, ok))
        else:
            ratio = abs(dulac.phi_residual(r, rho, P)) / dulac.phi_envelope(r, P)
            recs.append(checks.record(f"type II r={r:g} rho={rho:g}: phi / envelope", ratio, 1.0, 0, ratio <= 1.0))
    if args.csv:
        _write_csv(args.csv, ["kind", "r", "rho", "nu", "Y_in", "closed", "integrated", "abs_diff"], rows)
    table = [dict(zip(("kind", "r", "rho", "nu", "Y_in", "closed", "integrated", "abs_diff"), row)) for row in rows]
    return _emit(args, _report(args, recs, table=table, params=P.to_dict()))


def cmd_appendix3(args) -> int:
    seed = args.seed if args.seed is not None else 0
    return _emit(args, _report(args, verify.integrals_report(checks.child_rng(seed, 8))))


def cmd_suite(args) -> int:
    seed = args.seed if args.seed is not None else 0
    recs = []
    for k, title in checks.CRITERIA.items():
        for r in checks.run_criterion(k, checks.child_rng(seed, k), args.sweep, args.templates, args.nf, args.grid):
            recs.append({"criterion": k, "group": title, **r})
    return _emit(args, _report(args, recs))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nilcyc",
        description="Root bounds, normal forms, Dulac maps and blow-up checks for nilpotent graphics.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--version", action="version", version=f"nilcyc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, spec=True):
        if spec:
            sp.add_argument("--spec", required=True, help="input spec (JSON)")
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--seed", type=int, help="64-bit seed")
        sp.add_argument("--tol", type=float, help="tolerance override")
        sp.add_argument("--grid", type=int, default=4096, help="root scan grid size")
        sp.add_argument("--json", action="store_true", help="JSON report (default)")
        sp.add_argument("--csv", help="CSV output path (portrait, dulac)")
        return sp

    c = common(sub.add_parser("compensator", help="evaluate kappa, omega and friends"), spec=False)
    c.add_argument("action", choices=["eval"])
    c.add_argument("name", help="kappa, kappa_prime, calK, theta, omega, omega_big")
    c.add_argument("args", nargs="*", help="name=value arguments, e.g. xi=0.5 alpha=0.1")
    c.set_defaults(func=cmd_compensator)

    common(sub.add_parser("bound", help="root bound and certificate")).set_defaults(func=cmd_bound)
    vb = common(sub.add_parser("verify-bound", help="count roots along leaves and compare to the bound"))
    vb.add_argument("--nu", help="comma-separated leaf values")
    vb.set_defaults(func=cmd_verify_bound)
    nf = common(sub.add_parser("normalform", help="normal form of a quasi-linear 3-D field"))
    nf.add_argument("--degree", type=int, default=6)
    nf.set_defaults(func=cmd_normalform)
    common(sub.add_parser("portrait", help="trajectories of a planar field as CSV")).set_defaults(func=cmd_portrait)
    d = common(sub.add_parser("dulac", help="Dulac maps: closed form vs integration"))
    d.add_argument("action", choices=["compare"])
    d.set_defaults(func=cmd_dulac)
    common(sub.add_parser("appendix3", help="quadratures, 2F1 and S''(0)"), spec=False).set_defaults(func=cmd_appendix3)
    s = common(sub.add_parser("suite", help="every named check, deterministic for a fixed seed"), spec=False)
    s.add_argument("--sweep", type=int, default=500, help="random sums in the bound sweep")
    s.add_argument("--templates", type=int, default=100, help="instances per resonant template")
    s.add_argument("--nf", type=int, default=50, help="random fields per sigma class")
    s.set_defaults(func=cmd_suite, grid=1024)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else 2
    try:
        return args.func(args)
    except SchemaError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except NilcycError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
