import itertools

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

from suqdirac.tableaux import enumerate_tableaux, young_diagrams


def all_tableaux(ell, top):
    for lam in young_diagrams(ell, top):
        yield from enumerate_tableaux(lam)


@pytest.fixture(scope="session")
def tableaux_le4():
    return {ell: list(all_tableaux(ell, 4)) for ell in (1, 2, 3)}


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "_results", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        r = results[num]
        terminalreporter.write_line(
            f"{'PASS' if r['passed'] else 'FAIL'} criterion {num}: {r['name']} ({r['seconds']:.1f}s)")
