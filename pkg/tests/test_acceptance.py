"""Acceptance criteria 1-10, one pass/fail line per criterion.

Each criterion is made of the reproduction rows whose key starts with its
number; the criterion passes when all of its rows pass.
"""

import pytest

from simtri.reproduce import CHECKS, ReproContext, run_check

CRITERIA = sorted({k.rstrip("abcdefgh") for k, _, _ in CHECKS}, key=int)


@pytest.fixture(scope="module")
def ctx():
    return ReproContext()


def evaluate(criterion, ctx):
    rows = [run_check(k, ctx) for k, _, _ in CHECKS if k.rstrip("abcdefgh") == criterion]
    ok = all(r.passed for r in rows)
    failed = [r for r in rows if not r.passed]
    summary = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'} ({len(rows) - len(failed)}/{len(rows)} rows)"
    details = [r.line() for r in rows]
    return ok, summary, details


@pytest.mark.parametrize("criterion", CRITERIA)
def test_criterion(criterion, ctx, capsys):
    ok, summary, details = evaluate(criterion, ctx)
    with capsys.disabled():
        print("\n" + summary)
        for line in details:
            print("    " + line)
    assert ok, "\n".join(details)


if __name__ == "__main__":
    shared = ReproContext()
    for c in CRITERIA:
        ok, summary, details = evaluate(c, shared)
        print(summary)
        for line in details:
            print("    " + line)
