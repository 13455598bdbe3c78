"""Acceptance criteria, one test each; every run prints a PASS/FAIL line per criterion."""

from __future__ import annotations

import pytest

from hermtheta.reproduce import CRITERIA, run_criterion


@pytest.mark.slow
@pytest.mark.parametrize("key", [key for key, _ in CRITERIA])
def test_criterion(ctx, key, capsys):
    res = run_criterion(key, ctx)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail
