import os

import pytest
from hypothesis import HealthCheck, settings

from lame3.elliptic import lattice_data

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

TAUS = [1j, 0.5 + 1j, 0.3 + 0.8j]

# one line per acceptance criterion, collected by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def lat_i():
    return lattice_data(1j)


@pytest.fixture(scope="session", params=TAUS, ids=lambda t: f"tau={t}")
def lat(request):
    return lattice_data(request.param)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
