"""Acceptance suite: every numbered criterion as its own test.

The full battery runs once (seed 0) and is shared by the per-criterion
tests, each of which prints its table line so the pytest -v output carries
one PASS/FAIL line per criterion.
"""

import pytest

from boundarylab.acceptance import CRITERIA, run_acceptance

# wall-clock ceiling per criterion, in seconds
_BUDGETS = {
    1: 1.0, 2: 1.0, 3: 1.0, 4: 1.0, 5: 1.0, 6: 5.0, 7: 1.0,
    8: 5.0, 9: 1.0, 10: 30.0, 11: 5.0, 12: 2.0, 13: 60.0,
}

_cache = {}


def _results():
    if "results" not in _cache:
        _cache["results"] = run_acceptance(seed=0)
    return _cache["results"]


def _check(index):
    res = _results()[index - 1]
    status = "PASS" if res.passed else "FAIL"
    print(f"[{index:2d}] {status} {res.name:<30} {res.elapsed:7.2f}s  {res.detail}")
    assert res.passed, f"criterion {index} ({res.name}): {res.detail}"
    assert res.elapsed < _BUDGETS[index], (
        f"criterion {index} took {res.elapsed:.2f}s, budget {_BUDGETS[index]:.0f}s"
    )


@pytest.mark.parametrize(
    "index", range(1, len(CRITERIA) + 1),
    ids=[f"{i:02d}-{name}" for i, (name, _) in enumerate(CRITERIA, start=1)],
)
def test_criterion(index):
    _check(index)
