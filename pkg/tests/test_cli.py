import csv
import json

import numpy as np
import pytest

from nilcyc import blowup, cli, dulac
from nilcyc.errors import SchemaError
from nilcyc.monomial_algebra import MonomialSum, make_template, sum_to_dict
from nilcyc.monomial_algebra.random_sums import random_nonresonant_sum
from nilcyc.normal_form import QuasiLinearField3, SigmaClass, field_to_dict, random_field


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def report(tmp_path, argv):
    out = tmp_path / "out.json"
    code = cli.run(argv + ["--out", str(out)])
    return code, json.loads(out.read_text())


P1_SPEC = {"template": "BoundaryP1", "params": {"eps0": 0.3, "eps1": -0.2, "mu_bar3": 0.1}}


def test_bound_on_p1_template(tmp_path):
    spec = write(tmp_path, "s.json", P1_SPEC)
    code, rep = report(tmp_path, ["bound", "--spec", spec])
    assert code == 0
    assert rep["certificate"]["bound"] == 2
    assert rep["certificate"]["theorem"] == "P1"
    assert rep["tool"] == "nilcyc" and rep["schema_version"] == 1


def test_verify_bound_on_leaves(tmp_path):
    spec = write(tmp_path, "s.json", P1_SPEC)
    code, rep = report(tmp_path, ["verify-bound", "--spec", spec, "--nu", "1e-3,1e-4"])
    assert code == 0
    assert len(rep["checks"]) == 2
    assert all(c["pass"] and c["computed"] <= 2 for c in rep["checks"])


def test_suite_is_deterministic(tmp_path):
    argv = ["suite", "--seed", "42", "--sweep", "20", "--templates", "5", "--nf", "3"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cli.run(argv + ["--out", str(a)])
    cli.run(argv + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert {c["criterion"] for c in rep["checks"]} == set(range(1, 10))


def test_compensator_eval(tmp_path):
    code, rep = report(tmp_path, ["compensator", "eval", "omega", "xi=0.5", "alpha=0.1"])
    assert code == 0
    assert rep["checks"][0]["computed"] == pytest.approx(0.717735, abs=1e-6)
    assert cli.run(["compensator", "eval", "omega", "xi"]) == 2


def test_normalform_subcommand(tmp_path):
    X = random_field(np.random.default_rng(0), SigmaClass.rational(1, 2), 5, 0.01)
    spec = write(tmp_path, "f.json", field_to_dict(X))
    code, rep = report(tmp_path, ["normalform", "--spec", spec, "--degree", "5"])
    assert code == 0
    assert rep["normal_form"]["degree"] == 5


def test_dulac_compare_csv(tmp_path):
    spec = write(tmp_path, "d.json", {"sigma_class": {"kind": "integer", "p": 1}, "sigma_bar": 1.02, "eta": 0.3})
    path = tmp_path / "t.csv"
    code, rep = report(tmp_path, ["dulac", "compare", "--spec", spec, "--csv", str(path)])
    assert code == 0
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == len(rep["table"]) == 7
    assert set(rows[0]) == {"kind", "r", "rho", "nu", "Y_in", "closed", "integrated", "abs_diff"}


def test_portrait_csv(tmp_path):
    s = 1 / np.sqrt(3)
    spec = write(tmp_path, "p.json", {"mu_bar": [s, s, s], "a": -0.5, "initial": [[0.1, 0.2]], "t_max": 1, "n": 5})
    path = tmp_path / "p.csv"
    code, _ = report(tmp_path, ["portrait", "--spec", spec, "--csv", str(path)])
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["trajectory", "t", "u", "v"]
    assert len(rows) == 1 + 2 * 5


def test_integrals_reports_failure_exit_code(tmp_path):
    # the small-mu5 ratio check fails against the stated constant, so exit 1
    code, rep = report(tmp_path, ["appendix3"])
    failed = [c["name"] for c in rep["checks"] if not c["pass"]]
    assert code == 1
    assert failed == ["divergence ratio deviation shrink factor per decade"]


def test_usage_errors_exit_2(tmp_path, capsys):
    assert cli.run([]) == 2
    assert cli.run(["bogus"]) == 2
    assert cli.run(["bound", "--spec", str(tmp_path / "missing.json")]) == 2
    bad = write(tmp_path, "bad.json", {"foo": 1})
    assert cli.run(["bound", "--spec", bad]) == 2
    assert "error" in capsys.readouterr().err


def test_help_documents_csv_columns(capsys):
    assert cli.run(["--help"]) == 0
    out = capsys.readouterr().out
    assert "trajectory, t, u, v" in out and "abs_diff" in out


def test_parse_minimal_two_term(tmp_path):
    spec = write(tmp_path, "m.json", {"terms": [{"coeff": 1.0}, {"coeff": -2.0, "a": {"lam": 1.0, "lam0": 1.0}}]})
    V = cli.parse_spec(spec)
    assert isinstance(V, MonomialSum) and len(V) == 2


def test_parse_rejects_omega_off_base(tmp_path):
    spec = write(
        tmp_path,
        "g.json",
        {"terms": [{"coeff": 1.0, "omegas": [{"gamma": {"lam": 0.1, "lam0": 0.1}, "power": 1}]}]},
    )
    with pytest.raises(SchemaError) as e:
        cli.parse_spec(spec)
    assert "/terms/0/omegas/0/gamma" in e.value.pointer
    assert "lambda_0" in str(e.value)


def test_parse_family_label(tmp_path):
    spec = write(tmp_path, "f.json", {"variant": "Unfold", "B": 1.5, "mu": [0, 0, 0, 0, 0]})
    fam = cli.parse_spec(spec)
    assert isinstance(fam, blowup.QuadraticFamily)
    assert blowup.integrability_residuals(fam)[1] == "I^1_14"
    with pytest.raises(SchemaError) as e:
        cli.parse_dict({"variant": "Unfold", "B": 1.5, "mu": [0, 0, "x", 0, 0]})
    assert e.value.pointer == "/mu/2"


def test_round_trips_through_parse():
    rng = np.random.default_rng(5)
    V, _ = random_nonresonant_sum(rng)
    assert cli.parse_dict(sum_to_dict(V)) == V
    fam = blowup.QuadraticFamily(1.2, (0.0, 0.1, 0.0, 0.0, 0.2))
    assert cli.parse_dict(fam.to_dict()) == fam
    P = dulac.DulacParams(SigmaClass.integer(1), 1.02, eta=0.2, Phi={(0, 1): 0.01})
    assert cli.parse_dict(P.to_dict()) == P
    X = random_field(rng, SigmaClass.integer(2), 3)
    assert isinstance(cli.parse_dict(field_to_dict(X)), QuasiLinearField3)
    assert cli.parse_dict(field_to_dict(X)) == X
    T = make_template("BoundaryP1", eps0=0.1, eps1=0.2, mu_bar3=0.3)
    assert cli.parse_dict(sum_to_dict(T)) == T
