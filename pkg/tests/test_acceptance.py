"""One test per acceptance criterion; each prints a PASS/FAIL line."""
import pytest

from amodlab.acceptance import CRITERIA, load_golden, run_criterion

GOLDEN = load_golden()


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"c{c.number:02d}")
def test_criterion(criterion, capsys):
    result = run_criterion(criterion, GOLDEN)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
