import random

import pytest
from hypothesis import HealthCheck, settings

from chamberforge.fan import hirzebruch, p1xp1, projective_plane

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


NAMED_FANS = {
    "P2": projective_plane,
    "P1xP1": p1xp1,
    "F1": lambda: hirzebruch(1),
    "F2": lambda: hirzebruch(2),
}


@pytest.fixture(params=sorted(NAMED_FANS))
def named_fan(request):
    return NAMED_FANS[request.param]()


@pytest.fixture
def rng():
    return random.Random(20240607)


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = "test_acceptance.py::test_criterion_"
    if marker not in report.nodeid:
        return
    number = int(report.nodeid.split(marker)[1].split("_")[0])
    title = report.nodeid.split(marker)[1].split("_", 1)[1].replace("_", " ")
    ACCEPTANCE[number] = ("PASS" if report.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, title = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}")
