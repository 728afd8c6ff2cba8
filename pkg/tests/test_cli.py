from __future__ import annotations

import json

import pytest

from rootpoly.cli import JobSpec, ResultRecord, cmd_compute, latex_scalar, load_cached, main, store_cached
from rootpoly.exact_arith import Scalar, parse_scalar
from rootpoly.roots import parse_weight

W = parse_weight


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_compute_json_schema(capsys, tmp_path):
    code, out = run(capsys, "compute", "--family", "A", "--rank", "2", "--weight", "2,0",
                    "--construction", "mac", "--cache-dir", str(tmp_path))
    assert code == 0
    data = json.loads(out)
    assert data["root_system"] == {"family": "A", "rank": 2}
    assert data["lambda"] == [4, 0]
    assert data["checks"] == {}
    coeffs = {tuple(c["mu"]): parse_scalar(c["value"]) for c in data["coefficients"]}
    q, t = Scalar.symbol("q"), Scalar.symbol("t")
    assert coeffs == {(4, 0): 1, (2, 2): (1 + q) * (1 - t) / (1 - q * t)}
    assert data["provenance"]["source"] == "engine"
    assert len(data["fingerprint"]) == 32


def test_compute_latex_b3(capsys):
    code, out = run(capsys, "compute", "--family", "B", "--rank", "3", "--weight", "2,1,0", "--format", "latex",
                    "--no-cache")
    assert code == 0
    assert out.startswith("p_{2,1,0} = m_{2,1,0} + ")
    assert out.count("m_{") == 6


def test_minimal_weight_single_term(capsys):
    code, out = run(capsys, "compute", "--family", "D", "--rank", "3", "--weight", "1,0,0", "--construction", "mac",
                    "--no-cache", "--format", "plain")
    assert code == 0
    assert out.splitlines()[1:] == ["  m[1,0,0]: 1"]


def test_check_flags(capsys):
    code, out = run(capsys, "compute", "--family", "A", "--rank", "2", "--weight", "2,0", "--construction", "mac",
                    "-p", "t=q^2", "--check", "--no-cache")
    assert code == 0
    assert json.loads(out)["checks"] == {"eigenfunction": "pass", "orthogonality": "pass"}
    code, out = run(capsys, "compute", "--family", "B", "--rank", "2", "--weight", "2,1", "--check", "--no-cache")
    assert code == 0
    assert json.loads(out)["checks"] == {"eigenfunction": "pass", "orthogonality": "skipped"}
    code, out = run(capsys, "compute", "--family", "BC", "--rank", "2", "--weight", "2,1", "-p", "g=1",
                    "-p", "g_s=2", "-p", "g_l=1", "--check", "--no-cache")
    assert code == 0
    assert json.loads(out)["checks"]["orthogonality"] == "pass"


def test_cache_roundtrip_and_hit(capsys, tmp_path):
    argv = ["compute", "--family", "C", "--rank", "3", "--weight", "2,1,1", "--cache-dir", str(tmp_path)]
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    a, b = json.loads(first), json.loads(second)
    assert b["provenance"]["source"] == "cache"
    assert a["coefficients"] == b["coefficients"]
    assert len(list(tmp_path.glob("*.json"))) == 1
    _, third = run(capsys, *argv, "-p", "g=2")
    assert json.loads(third)["fingerprint"] != a["fingerprint"]


def test_store_load_roundtrip(tmp_path):
    job = JobSpec("A", 2, W("2,0"), "ho")
    rec = cmd_compute(job)
    path = tmp_path / "x.json"
    store_cached(path, rec)
    again = load_cached(path)
    assert isinstance(again, ResultRecord)
    assert again.coefficients == rec.coefficients
    assert again.expansion().equals(rec.expansion())


def test_corrupt_cache_is_recomputed(capsys, tmp_path, caplog):
    job = JobSpec("A", 2, W("2,0"), "ho")
    job.validate()
    (tmp_path / f"{job.fingerprint()}.json").write_text("{not json")
    code, out = run(capsys, "compute", "--family", "A", "--rank", "2", "--weight", "2,0", "--cache-dir", str(tmp_path))
    assert code == 0
    assert json.loads(out)["provenance"]["source"] == "engine"
    assert "corrupt cache" in caplog.text


def test_fingerprint_stable():
    a = JobSpec("B", 3, W("2,1,0"), "ho", {"g": "1"})
    b = JobSpec("B", 3, W("2,1,0"), "ho", {"g": "1"})
    assert a.fingerprint() == b.fingerprint()
    assert a.fingerprint() != JobSpec("B", 3, W("2,1,0"), "ho", {"g": "2"}).fingerprint()


@pytest.mark.parametrize("argv,code,kind", [
    (["compute", "--family", "B", "--rank", "3", "--weight", "0,1,2"], 2, "JobError"),
    (["compute", "--family", "B", "--rank", "3", "--weight", "2,1"], 2, "ArityMismatch"),
    (["compute", "--family", "B", "--rank", "3", "--weight", "2,1,0", "-p", "t=2"], 2, "JobError"),
    (["compute", "--family", "BC", "--rank", "2", "--weight", "1,0", "--construction", "mac"], 2, "JobError"),
    (["compute", "--family", "A", "--rank", "2", "--weight", "2,0", "-p", "g=-1"], 3, "RegularityViolation"),
    (["compute", "--family", "B", "--rank", "4", "--weight", "1,0,0,0", "--construction", "mac-general"],
     4, "RankGuardExceeded"),
])
def test_exit_codes(capsys, argv, code, kind):
    got, out = run(capsys, *argv, "--no-cache")
    assert got == code
    assert json.loads(out)["error"]["type"] == kind


def test_inspect_kinds(capsys):
    assert run(capsys, "inspect", "stabilizer", "--family", "B", "--rank", "3", "--weight", "1,1,0") == (0, "4\n")
    assert run(capsys, "inspect", "interval", "--family", "A", "--rank", "2", "--weight", "1,1") == (0, "1,1\n")
    code, out = run(capsys, "inspect", "orbit", "--family", "B", "--rank", "2", "--weight", "1,0")
    assert code == 0 and len(out.split()) == 4
    code, out = run(capsys, "inspect", "interval", "--family", "BC", "--rank", "3", "--weight", "2,1,0",
                    "-p", "g_s=0", "--prune-cn")
    assert out.split() == ["1,0,0", "1,1,1", "2,1,0"]


def test_inspect_matrix(capsys):
    code, out = run(capsys, "inspect", "matrix", "--family", "D", "--rank", "3", "--weight", "2,1,0",
                    "--construction", "mac", "--choice", "omega1", "--format", "json")
    assert code == 0
    view = json.loads(out)["matrix"]
    assert len(view["rows"]) == 4 and len(view["normalization_factors"]) == 3
    assert view["eps_rows"][1][0] == "eps[2,1,0] - eps[1,-1,1]"
    code, out = run(capsys, "inspect", "matrix", "--family", "B", "--rank", "3", "--weight", "2,1,0")
    assert code == 0 and out.startswith("interval: 0,0,0; 1,0,0")


def test_latex_scalar():
    assert latex_scalar(parse_scalar("2*g/(1+g)")) == r"\frac{2 g}{1 + g}"
    assert latex_scalar(parse_scalar("q^(1/2)")) == "q^{1/2}"
