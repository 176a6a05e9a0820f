"""Shared pytest plumbing: the acceptance criteria summary table."""

import re

_CRITERION_RE = re.compile(r"test_criterion_(\d+)_([a-z0-9_]+)")
_results = {}


def pytest_runtest_logreport(report):
    m = _CRITERION_RE.search(report.nodeid)
    if m is None or "test_acceptance" not in report.nodeid:
        return
    number, slug = int(m.group(1)), m.group(2)
    if report.when == "call":
        if report.skipped:
            outcome = "SKIPPED-LONG"
        else:
            outcome = "PASS" if report.passed else "FAIL"
        _results[number] = (slug, outcome, report.duration)
    elif report.when == "setup" and report.failed:
        _results[number] = (slug, "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_results):
        slug, outcome, duration = _results[number]
        name = slug.replace("_", "-")
        terminalreporter.write_line(
            f"criterion {number:02d} {name:<28s} {outcome:<12s} {duration:8.2f}s"
        )
