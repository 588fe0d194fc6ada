"""Acceptance criteria at their stated tolerances. One PASS/FAIL line per criterion is
printed in the terminal summary."""
import pytest

from suqdirac.acceptance import CRITERIA, run_criterion

_results = {}


@pytest.mark.parametrize("num", [c[0] for c in CRITERIA], ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(num):
    res = run_criterion(num)
    _results[num] = res
    line = f"{'PASS' if res['passed'] else 'FAIL'} criterion {num}: {res['name']} ({res['seconds']:.1f}s)"
    print(line)
    assert res["passed"], f"{line}\n{res['details']}"

