import io
import json
import subprocess
import sys

import pytest

from lipfree.cli import run


def call(argv, cwd=None):
    out = io.StringIO()
    code = run(argv, out=out)
    return code, out.getvalue()


@pytest.fixture(autouse=True)
def _in_data_dir(data_dir, monkeypatch):
    monkeypatch.chdir(data_dir)


def report(argv):
    code, text = call(argv)
    assert code == 0, text
    return json.loads(text)


def test_aenorm_example():
    r = report(["aenorm", "--space", "ud4.json", "--molecule", "mol_ud4.json"])
    assert r["verdict"] == "2"
    assert list(r) == ["version", "command", "inputs", "verdict"]


def test_malformed_metric_exit_2():
    code, text = call(["metric", "validate", "malformed.json"])
    r = json.loads(text)
    assert code == 2 and r["certificate"]["error"] == "ParseError" and r["certificate"]["line"] == 4
    code, text = call(["metric", "validate", "bad_metric.json"])
    assert code == 2 and json.loads(text)["certificate"]["error"] == "SymmetryViolation"


def test_sltp_check_fresh_pair():
    r = report(["sltp", "check", "--space", "ud8.json", "--n", "0,p1,p2", "--pool", "p6:p7", "--eps", "0/1"])
    assert r["verdict"] == "Witness p6:p7"
    r = report(["sltp", "check", "--space", "ud4.json", "--n", "0,p1,p2,p3", "--eps", "1/2", "--ltp"])
    assert r["verdict"] == "Failure" and r["inputs"]["property"] == "LTP"


def test_decompose_and_duality():
    r = report(["decompose", "--molecule", "mol_ud4.json", "--target-cost", "5"])
    assert r["verdict"] == "5" and r["certificate"]["aenorm"] == "2"
    r = report(["duality-check", "--molecule", "mol_ud4.json"])
    assert r["certificate"]["pairing"] == r["certificate"]["aenorm"] == r["certificate"]["oracle"] == "2"


def test_witness_round_trip(tmp_path):
    """The witness certificate, fed back through pair, reproduces the norm."""
    r = report(["witness", "--molecule", "mol_ud4.json"])
    fn = tmp_path / "f.json"
    fn.write_text(json.dumps({"space": r["inputs"]["space"], "values": r["certificate"]["values"]}))
    assert report(["lipnorm", "--function", str(fn)])["verdict"] == r["certificate"]["lip"]
    assert report(["pair", "--function", str(fn), "--molecule", "mol_ud4.json"])["verdict"] == r["verdict"]


def test_doh_search_and_certificate_round_trip(tmp_path):
    r = report(["doh", "search", "--problem", "line_problem.json", "--nmax", "2"])
    assert r["verdict"] == "violation" and r["certificate"]["objective"] == "-1/2"
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps(r["certificate"]["instance"]))
    again = report(["doh", "objective", "--instance", str(inst)])
    assert again["verdict"] == "violation" and again["certificate"]["objective"] == "-1/2"
    ok = report(["doh", "search", "--problem", "line_problem.json", "--nmax", "2", "--eps", "2/3"])
    assert ok["verdict"] == "ok" and ok["certificate"]["min_objective"] == "0"
    assert ok["disclaimer"]["n_max"] == 2 and ok["disclaimer"]["ground"] == ["0", "p"]


def test_from_sltp_round_trip(tmp_path):
    r = report(["doh", "from-sltp", "--problem", "from_sltp.json"])
    assert r["verdict"] == "violation" and r["certificate"]["objective"] == "-17/10"
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps(r["certificate"]["instance"]))
    again = report(["doh", "objective", "--any-y", "--instance", str(inst)])
    assert again["certificate"]["objective"] == "-17/10"


def test_chain_verify():
    r = report(["doh", "chain-verify", "--problem", "chain_problem.json"])
    assert r["verdict"] == "chain holds"
    assert [v for _, v in r["certificate"]["lines"]] == ["6", "5", "5", "3", "3", "3"]


def test_gallery_commands():
    r = report(["gallery", "c01", "--eps", "1/4"])
    assert r["certificate"]["norms"] == ["1"] * 4 and r["certificate"]["margin"] == "1/2"
    assert report(["gallery", "c01", "--eps", "1/3"])["verdict"] == "no strict violation at the boundary"
    r = report(["gallery", "abs-sum", "--norm", "linf", "--eps", "1/4"])
    assert r["certificate"]["objective"] == "-1/2"
    r = report(["gallery", "abs-sum", "--norm", "polygon.json", "--eps", "1/10", "--dim", "2"])
    assert r["verdict"] == "violation"
    code, text = call(["gallery", "abs-sum", "--norm", "l1", "--eps", "1/4"])
    assert code == 2 and json.loads(text)["certificate"]["error"] == "EpsTooLarge"


def test_bad_rational_argument():
    code, text = call(["gallery", "c01", "--eps", "0.25"])
    assert code == 2 and json.loads(text)["certificate"]["error"] == "ParseError"


def test_usage_error_exit_2(capsys):
    code, text = call(["sltp", "check", "--space", "ud8.json"])
    assert code == 2 and text == ""
    assert "usage" in capsys.readouterr().err


def test_deterministic_output():
    argv = ["doh", "search", "--problem", "line_problem.json", "--nmax", "2"]
    assert call(argv) == call(argv)


def test_module_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "lipfree", "aenorm", "--molecule", "mol_ud4.json"],
                          cwd=data_dir, capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "2"
