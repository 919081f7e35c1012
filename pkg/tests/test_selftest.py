import io

from lipfree.cli import run
from lipfree.selftest import FAULT_CORRUPT_DISTANCE, run_criterion


def test_selftest_report_is_byte_identical():
    a, b = io.StringIO(), io.StringIO()
    assert run(["selftest"], out=a) == 0
    run(["selftest"], out=b)
    assert a.getvalue() == b.getvalue()
    assert '"verdict": "pass"' in a.getvalue()


def test_corrupted_distances_fail_duality_with_a_molecule():
    res = run_criterion(2, fault=FAULT_CORRUPT_DISTANCE)
    assert not res.passed
    assert "molecule" in res.detail and res.detail["molecule"]
    assert res.line().startswith("[FAIL]")
