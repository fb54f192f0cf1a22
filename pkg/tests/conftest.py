import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from redundant_radix.numerals import Params  # noqa: E402

TESTED = [(2, 2), (2, 3), (3, 3), (3, 4), (3, 5)]


@pytest.fixture
def rng():
    return random.Random(20261017)


@pytest.fixture(params=TESTED, ids=lambda sr: f"s{sr[0]}r{sr[1]}")
def params(request):
    return Params(*request.param)


_criteria: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    _criteria[number] = (title, "PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status, duration = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}  ({duration:.2f}s)")
