from pathlib import Path

import pytest

_VERDICTS = {}


@pytest.fixture
def data_dir():
    return Path(__file__).parent / "data"


@pytest.fixture
def verdict(request):
    """Attach a one-line summary to an acceptance test."""

    def record(name, detail=""):
        _VERDICTS[request.node.nodeid] = [name, detail, None]

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    entry = _VERDICTS.get(item.nodeid)
    if entry is not None and (report.when == "call" or report.failed):
        if entry[2] != "FAIL":
            entry[2] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, detail, status in _VERDICTS.values():
        terminalreporter.write_line(f"[{status or 'FAIL'}] {name}: {detail}")
