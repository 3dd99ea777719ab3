"""Acceptance gate: one line per criterion is printed in the terminal summary."""

import pytest

from soficent.acceptance import CRITERIA, run_suite


@pytest.fixture(scope="module")
def results(pytestconfig):
    lines = pytestconfig.acceptance_lines = []
    return {r.key: r for r in run_suite(seed=0, echo=lines.append)}


@pytest.mark.parametrize("key", list(CRITERIA))
def test_criterion(results, key):
    r = results[key]
    assert r.passed, f"{r.line()}\n{r.details}"
