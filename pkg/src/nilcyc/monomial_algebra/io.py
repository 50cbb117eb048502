"""JSON (de)serialization of displacement specs and certificates.

Spec layout::

    {"mode": "TwoVar",
     "sigma_class": {"kind": "irrational", "p": null, "q": null},
     "terms": [{"coeff": 1.0,
                "a": {"lam": 1.5, "lam0": 1.5}, "b": {"lam": 0, "lam0": 0},
                "omegas": [{"gamma": {"lam": 0.1, "lam0": 0}, "power": 1}],
                "omega_bigs": [],
                "remainder": {"kind": "BigO_r_delta", "delta": 0.5,
                              "concrete": [{"coeff": 0.1, "a": ..., "b": ...}]}}],
     "domain": {"r_min": 1e-4, "r_max": 0.5, "rho_max": 0.5, "nu_list": [1e-5]}}

Errors carry a JSON pointer to the offending field.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NilcycError, SchemaError
from .derdiv import CertificateStep, RootBoundCertificate
from .monomial import ExponentPair, GeneralMonomial, OmegaBigFactor, OmegaFactor
from .remainder import ConcreteRemainder, MonomialSum, RemainderClass, Term

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class LeafDomain:
    r_min: float = 1e-4
    r_max: float = 0.9
    rho_max: float = 0.5
    nu_list: tuple = (1e-5, 1e-6, 1e-7)


def _need(obj, key, ptr):
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", ptr)
    if key not in obj:
        raise SchemaError(f"missing field {key!r}", f"{ptr}/{key}")
    return obj[key]


def _num(x, ptr) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SchemaError("expected a number", ptr)
    return float(x)


def _pair(obj, ptr) -> ExponentPair:
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return ExponentPair.const(obj)
    return ExponentPair(_num(_need(obj, "lam", ptr), f"{ptr}/lam"), _num(_need(obj, "lam0", ptr), f"{ptr}/lam0"))


def _gamma(obj, ptr) -> ExponentPair:
    g = _pair(obj, ptr)
    if g.lam0 != 0.0:
        raise SchemaError("compensator parameter must vanish at lambda_0 (OmegaFactor invariant)", f"{ptr}/lam0")
    return g


def _monomial(obj, ptr, r0=1.0) -> GeneralMonomial:
    a = _pair(obj.get("a", 0.0), f"{ptr}/a")
    b = _pair(obj.get("b", 0.0), f"{ptr}/b")
    oms = []
    for k, w in enumerate(obj.get("omegas", [])):
        p = f"{ptr}/omegas/{k}"
        oms.append(OmegaFactor(_gamma(_need(w, "gamma", p), f"{p}/gamma"), _num(w.get("power", 1.0), f"{p}/power")))
    bigs = []
    for k, w in enumerate(obj.get("omega_bigs", [])):
        p = f"{ptr}/omega_bigs/{k}"
        bigs.append(
            OmegaBigFactor(
                _gamma(_need(w, "gamma1", p), f"{p}/gamma1"),
                _gamma(_need(w, "gamma2", p), f"{p}/gamma2"),
                _num(w.get("power", 1.0), f"{p}/power"),
            )
        )
    return GeneralMonomial(a, b, tuple(oms), tuple(bigs), _num(obj.get("r0", r0), f"{ptr}/r0"))


def _remainder(obj, ptr, r0):
    if obj is None:
        return RemainderClass(), None
    kind = _need(obj, "kind", ptr)
    try:
        cls = RemainderClass(kind, obj.get("delta"))
    except NilcycError as e:
        raise SchemaError(str(e), f"{ptr}/kind") from e
    conc = None
    if "concrete" in obj and obj["concrete"] is not None:
        terms = []
        for k, t in enumerate(obj["concrete"]):
            p = f"{ptr}/concrete/{k}"
            terms.append((_num(_need(t, "coeff", p), f"{p}/coeff"), _monomial(t, p, r0)))
        conc = ConcreteRemainder(tuple(terms))
        if not conc.belongs_to(cls):
            raise SchemaError(f"concrete remainder is not of class {kind}", f"{ptr}/concrete")
    return cls, conc


def sum_from_dict(d: dict) -> MonomialSum:
    mode = d.get("mode", "TwoVar")
    if mode not in ("TwoVar", "OneVar"):
        raise SchemaError("mode must be TwoVar or OneVar", "/mode")
    raw = _need(d, "terms", "")
    if not isinstance(raw, list) or not raw:
        raise SchemaError("terms must be a nonempty list", "/terms")
    terms = []
    for k, t in enumerate(raw):
        ptr = f"/terms/{k}"
        try:
            mono = _monomial(t, ptr)
            cls, conc = _remainder(t.get("remainder"), f"{ptr}/remainder", mono.r0)
            terms.append(Term(_num(_need(t, "coeff", ptr), f"{ptr}/coeff"), mono, cls, conc))
        except SchemaError:
            raise
        except NilcycError as e:
            raise SchemaError(str(e), ptr) from e
    meta = {}
    if "sigma_class" in d:
        meta["sigma_class"] = d["sigma_class"]
    if "domain" in d:
        dom = d["domain"]
        meta["domain"] = LeafDomain(
            _num(dom.get("r_min", 1e-4), "/domain/r_min"),
            _num(dom.get("r_max", 0.9), "/domain/r_max"),
            _num(dom.get("rho_max", 0.5), "/domain/rho_max"),
            tuple(_num(x, f"/domain/nu_list/{k}") for k, x in enumerate(dom.get("nu_list", [1e-5]))),
        )
    if "template" in d:
        meta["template"] = d["template"]
    try:
        return MonomialSum(tuple(terms), mode, meta)
    except NilcycError as e:
        raise SchemaError(str(e), "/mode") from e


def _pair_dict(p: ExponentPair) -> dict:
    return {"lam": p.lam, "lam0": p.lam0}


def monomial_to_dict(m: GeneralMonomial) -> dict:
    out = {
        "a": _pair_dict(m.a),
        "b": _pair_dict(m.b),
        "omegas": [{"gamma": _pair_dict(f.gamma), "power": f.power} for f in m.omegas],
        "omega_bigs": [
            {"gamma1": _pair_dict(f.gamma1), "gamma2": _pair_dict(f.gamma2), "power": f.power} for f in m.omega_bigs
        ],
    }
    if m.r0 != 1.0:
        out["r0"] = m.r0
    return out


def sum_to_dict(V: MonomialSum) -> dict:
    terms = []
    for t in V.terms:
        d = {"coeff": t.coeff, **monomial_to_dict(t.monomial)}
        rem = {"kind": t.remainder.kind}
        if t.remainder.delta is not None:
            rem["delta"] = t.remainder.delta
        if t.concrete is not None:
            rem["concrete"] = [{"coeff": c, **monomial_to_dict(m)} for c, m in t.concrete.terms]
        d["remainder"] = rem
        terms.append(d)
    out = {"mode": V.mode, "terms": terms}
    if "sigma_class" in V.meta:
        out["sigma_class"] = V.meta["sigma_class"]
    dom = V.meta.get("domain")
    if dom is not None:
        out["domain"] = {"r_min": dom.r_min, "r_max": dom.r_max, "rho_max": dom.rho_max, "nu_list": list(dom.nu_list)}
    if "template" in V.meta:
        out["template"] = V.meta["template"]
    return out


def certificate_to_dict(c: RootBoundCertificate) -> dict:
    return {
        "bound": c.bound,
        "theorem": c.theorem,
        "initial_terms": c.initial_terms,
        "ordering": list(c.ordering),
        "steps": [
            {
                "divided_by": str(s.divided_by),
                "divided_by_monomial": monomial_to_dict(s.divided_by),
                "divisor_value": s.divisor_value,
                "divisors": list(s.divisors),
                "remaining_terms": s.remaining_terms,
                "note": s.note,
            }
            for s in c.steps
        ],
    }


def certificate_from_dict(d: dict) -> RootBoundCertificate:
    steps = tuple(
        CertificateStep(
            _monomial(s["divided_by_monomial"], f"/steps/{k}/divided_by_monomial"),
            float(s["divisor_value"]),
            int(s["remaining_terms"]),
            tuple(s.get("divisors", ())),
            s.get("note", ""),
        )
        for k, s in enumerate(d["steps"])
    )
    return RootBoundCertificate(int(d["bound"]), steps, d["theorem"], int(d["initial_terms"]), tuple(d["ordering"]))


__all__ = [
    "LeafDomain",
    "sum_from_dict",
    "sum_to_dict",
    "monomial_to_dict",
    "certificate_to_dict",
    "certificate_from_dict",
    "SCHEMA_VERSION",
]
