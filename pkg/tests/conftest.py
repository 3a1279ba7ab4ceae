import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = Path(__file__).parent / "fixtures"

_ACCEPT: dict = {}


@pytest.fixture
def fixtures():
    return FIXTURES


def pytest_collection_modifyitems(items):
    for item in items:
        if item.nodeid.startswith("tests/test_acceptance.py") or "test_acceptance.py::" in item.nodeid:
            doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
            _ACCEPT[item.nodeid] = [doc, "NOT RUN"]


def pytest_runtest_logreport(report):
    if report.nodeid in _ACCEPT:
        entry = _ACCEPT[report.nodeid]
        if report.when == "call" or report.failed:
            if report.failed:
                entry[1] = "FAIL"
            elif report.skipped:
                entry[1] = "SKIP"
            elif entry[1] != "FAIL":
                entry[1] = "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPT:
        return
    terminalreporter.section("acceptance criteria")
    for doc, status in _ACCEPT.values():
        terminalreporter.write_line(f"{status:4}  {doc}")
