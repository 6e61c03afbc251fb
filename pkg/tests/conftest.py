import os
import sys
from pathlib import Path

# post-hoc certificates (S-pair checks, witness identities) on every computation
os.environ.setdefault("POLYDESCENT_SELF_CHECK", "1")
sys.path.insert(0, str(Path(__file__).parent))

import pytest
from hypothesis import HealthCheck, settings

from polydescent.parser import load_problem

settings.register_profile(
    "polydescent", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("polydescent")

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one of the numbered acceptance criteria")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    entry = _acceptance.setdefault(number, {"title": title, "passed": True, "seen": False})
    if report.when == "call":
        entry["seen"] = True
        entry["passed"] &= report.passed
    elif report.failed or report.skipped:
        entry["seen"] = True
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_acceptance):
        entry = _acceptance[number]
        verdict = "PASS" if entry["seen"] and entry["passed"] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {entry['title']}")


@pytest.fixture
def fixture_problem():
    def load(name: str):
        return load_problem(str(FIXTURES / name)).problem

    return load
