"""Acceptance criteria, one test per criterion.

Everything is exact (tolerance zero); each test prints its pass/fail line
so the suite output doubles as the acceptance report.
"""

import pytest

from gcontact.acceptance import CRITERIA, _Cache

_cache = _Cache()
_seed = 0


def _run(number):
    fn = dict(CRITERIA)[number]
    passed, detail = fn(_cache, _seed, 1)
    print("criterion %s: %s (%s)" % (number, "pass" if passed else "FAIL",
                                     detail))
    assert passed, detail


@pytest.mark.parametrize("number", [c for c, _ in CRITERIA])
def test_criterion(number):
    _run(number)
