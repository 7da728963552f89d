import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")
_results: dict[int, str] = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match:
        return
    k = int(match.group(1))
    if report.failed:
        _results[k] = "FAIL"
    elif report.when == "call" and report.passed:
        _results.setdefault(k, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_results):
        terminalreporter.write_line(f"criterion {k}: {_results[k]}")
