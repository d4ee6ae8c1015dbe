"""Per-criterion PASS/FAIL summary for the acceptance suite."""
import re

_RESULTS = {}
_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    match = _PATTERN.search(report.nodeid)
    if not match:
        return
    key = (int(match.group(1)), match.group(2))
    # parametrized cases share one verdict: any failing phase fails the criterion
    if report.outcome == "failed":
        _RESULTS[key] = "FAIL"
    elif report.when == "call":
        _RESULTS.setdefault(key, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for (number, name), outcome in sorted(_RESULTS.items()):
        terminalreporter.write_line(f"criterion {number} ({name.replace('_', ' ')}): {outcome}")
