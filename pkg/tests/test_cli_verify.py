import json

import pytest

from hyperlat import cli
from hyperlat import verify as vf


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lat_info(capsys):
    code, out, _ = run(capsys, "lat", "info", "(2)+A1^2+D4(2)")
    data = json.loads(out)
    assert code == 0 and data["abs_det"] == 512 and data["signature"] == [1, 6]


def test_lat_iso(capsys):
    _, out, _ = run(capsys, "lat", "iso", "(2)+A1^3+A1(2)^3", "U(2)+A1(2)+D4(2)")
    assert json.loads(out)["verdict"] == "distinct"


def test_bad_lattice_exit_code(capsys):
    code, _, err = run(capsys, "lat", "info", "Q7")
    assert code == 2 and "unknown lattice" in err


def test_gauss_commands(capsys):
    assert json.loads(run(capsys, "gauss", "roots", "L2")[1])["count"] == 6
    assert json.loads(run(capsys, "gauss", "group", "L2")[1])["order"] == 96
    out = json.loads(run(capsys, "gauss", "reduce", "L1,6", "chi5", "--e7")[1])
    assert out["fixed_dim"] == 5 and out["class"] == "(A1^3', D4)"
    out = json.loads(run(capsys, "gauss", "fixed", "L2^2", "psi4", "--compare", "D4(2)")[1])
    assert out["compare"].startswith("Isomorphic")
    out = json.loads(run(capsys, "gauss", "pair", "L1,6", "chi6")[1])
    assert out["chi"]["abs_det"] == 2 ** 9 and out["i_chi"]["abs_det"] == 2 ** 10


def test_gauss_mirror(capsys):
    out = json.loads(run(capsys, "gauss", "mirror", "L1,6", "[1,0,0,0,0,0,0]")[1])
    assert out["kind"] in ("nodal", "hyperelliptic")


def test_closure_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("HYPERLAT_MAX_CLOSURE", "20")
    code, _, err = run(capsys, "gauss", "group", "L2")
    assert code == 2 and "cap" in err


def test_vinberg_json_and_cox(capsys, tmp_path):
    code, out, _ = run(capsys, "vinberg", "--predicate", "gaussian:chi1", "--emit", "json")
    data = json.loads(out)
    assert code == 0 and data["status"] == "finished" and len(data["roots"]) == 13
    path = tmp_path / "c6.json"
    path.write_text(out, encoding="utf-8")
    auto = json.loads(run(capsys, "cox", "auto", str(path))[1])
    assert auto["order"] == 24 and auto["is_s4"]
    dot = run(capsys, "cox", "render", str(path))[1]
    assert dot.count('class="halved"') == 4


def test_vinberg_ascii(capsys):
    code, out, _ = run(capsys, "vinberg", "--lattice", "(2)+A1^3", "--emit", "ascii")
    assert code == 0 and "===" in out


def test_vinberg_height_cap_status(capsys):
    code, out, _ = run(capsys, "vinberg", "--lattice", "(2)+A1^4", "--max-height", "1/2")
    assert code == 3 and json.loads(out)["status"] == "height_capped"


def test_cox_classes(capsys):
    out = json.loads(run(capsys, "cox", "classes", "E7", "--opposite")[1])
    assert len(out) == 10
    assert {"class", "type", "members", "opposite"} <= set(out[0])
    out = json.loads(run(capsys, "cox", "classes", "[[1,4],[4,1]]")[1])
    assert len(out) == 4


def test_verify_paper_selection(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify-paper", "--only", "table1,lambda2", "--json", str(target))
    assert code == 0 and "overall: PASS" in out
    data = json.loads(target.read_text(encoding="utf-8"))
    assert data["pass"] and len(data["records"]) == 9
    assert {r["check"] for r in data["records"]} == {"table1", "lambda2"}
    assert all(r["anchor"] for r in data["records"])


def test_verify_paper_unknown_check(capsys):
    code, _, err = run(capsys, "verify-paper", "--only", "nope")
    assert code == 2 and "unknown check" in err


def test_report_is_deterministic():
    a = vf.verify_paper(["table1", "segment"]).to_json()
    b = vf.verify_paper(["segment", "table1"]).to_json()
    assert a == b


def test_failures_are_records_not_aborts():
    rec = vf._Recorder("x", "anchor")
    rec.guard("boom", 1, lambda: 1 / 0)
    report = vf.VerificationReport(rec.records)
    assert not report.passed and "ZeroDivisionError" in report.records[0].computed


def test_every_check_has_data():
    checks = vf.load_checks()
    assert set(vf.CHECKS) == set(checks)
    assert all(checks[c]["anchor"] for c in checks)


@pytest.mark.parametrize("check,count", [("table1", 7), ("fig3", 8)])
def test_record_counts(check, count):
    assert len(vf.run_check(check)) == count
