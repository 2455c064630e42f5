"""Acceptance checks, one test per criterion.

Each criterion is established by the verification suite that covers it
(see ``liegra.verify.SUITES``).  A suite runs once and its wall time is
charged in full to every criterion it covers, so the time budgets below
are checked conservatively.  Run directly with ``python
tests/test_acceptance.py`` to get the summary without pytest.
"""
from __future__ import annotations

import sys
import time
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
import acceptance_state  # noqa: E402

from liegra.verify import SUITES  # noqa: E402

BUDGET_SECONDS = {
    1: 1, 2: 1, 3: 30, 4: 10, 5: 10, 6: 60, 7: 60,
    8: 10, 9: 120, 10: 60, 11: 120, 12: 30, 13: 300,
}

SUITE_OF = {k: name for name, (crits, _) in SUITES.items() for k in crits}


@lru_cache(maxsize=None)
def run(name: str):
    start = time.perf_counter()
    reports = SUITES[name][1]()
    return reports, time.perf_counter() - start


def evaluate(k: int):
    reports, secs = run(SUITE_OF[k])
    mine = [r for r in reports if r.name.startswith(f"C{k} ")]
    ok = bool(mine) and all(r.passed for r in mine) and secs < BUDGET_SECONDS[k]
    acceptance_state.RESULTS[k] = (ok, secs, f"{BUDGET_SECONDS[k]} s budget")
    return ok, mine, secs


def test_every_criterion_has_a_suite():
    assert sorted(SUITE_OF) == list(range(1, 14))


@pytest.mark.parametrize("k", range(1, 14))
def test_criterion(k):
    ok, reports, secs = evaluate(k)
    assert reports, f"no checks tagged C{k}"
    failed = [r.line() for r in reports if not r.passed]
    assert not failed, "\n".join(failed)
    assert secs < BUDGET_SECONDS[k], f"took {secs:.1f} s, budget {BUDGET_SECONDS[k]} s"
    assert ok


if __name__ == "__main__":
    for k in range(1, 14):
        evaluate(k)
    print("\n".join(acceptance_state.summary_lines()))
    sys.exit(0 if all(ok for ok, _, _ in acceptance_state.RESULTS.values()) else 1)
