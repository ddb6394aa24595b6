"""The twelve acceptance criteria, each at its stated time budget.

One ``[PASS]``/``[FAIL]`` line per criterion is printed in the terminal
summary (see ``conftest.py``).
"""

import pytest

from copyables.suite import CHECKS, run_check

RESULTS = {}


@pytest.mark.parametrize("number", [c[0] for c in CHECKS], ids=[f"{c[0]:02d}-{c[1]}" for c in CHECKS])
def test_criterion(number):
    r = run_check(number)
    RESULTS[number] = r
    print(r.line())
    assert r.ok, r.detail
    assert r.in_time, f"took {r.elapsed:.2f}s, budget {r.limit:g}s"
