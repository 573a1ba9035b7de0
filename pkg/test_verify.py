"""
Tests for the verification suites.
"""

import pytest

from src.config.constants import VerifySuite
from src.config.settings import Settings
from src.commands.verify import CheckResult, VerifySummary, cmd_verify


@pytest.fixture
def settings():
    return Settings().with_optimizer(starts=0, grid_floor=8, local_refinement=False)


@pytest.mark.parametrize("suite, trials", [
    ("paper-numbers", None),
    ("beta-ge-tau", 10),
    ("threshold", 5),
    ("class-bounds", None),
    ("protocol", 5),
])
def test_suite_passes(settings, suite, trials):
    summary = cmd_verify(suite, settings, seed=1, trials=trials)
    assert summary.suite == VerifySuite(suite)
    assert summary.checks
    assert summary.passed, [c.detail for c in summary.failures]


def test_unknown_suite(settings):
    with pytest.raises(ValueError):
        cmd_verify("everything", settings)


def test_summary_lines_report_failures():
    summary = VerifySummary(
        suite=VerifySuite.PROTOCOL,
        checks=[CheckResult("ok", True, "fine"), CheckResult("broken", False, "off by 1")],
    )
    assert not summary.passed
    assert [c.name for c in summary.failures] == ["broken"]
    lines = summary.lines()
    assert lines[1] == "FAIL broken: off by 1"
    assert lines[-1].startswith("protocol: 1/2 checks passed")
