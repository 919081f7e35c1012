"""One test per acceptance criterion; each prints its pass/fail line.

Run ``python3 tests/test_acceptance.py`` to print the lines without pytest
capturing them, or ``pytest tests/test_acceptance.py -s``.
"""

import sys

import pytest

from lipfree.selftest import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [num for num, _, _ in CRITERIA],
                         ids=[f"{num:02d}-{name}" for num, name, _ in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    print(result.line())
    assert result.passed, result.detail


if __name__ == "__main__":
    failed = 0
    for num, _, _ in CRITERIA:
        result = run_criterion(num)
        print(result.line())
        failed += not result.passed
    sys.exit(1 if failed else 0)
