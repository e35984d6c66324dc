import os

import pytest
from hypothesis import HealthCheck, settings

from adjoint_chains import chain_from_rows
from adjoint_chains.tables import GOLDEN

settings.register_profile("default", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def golden_chain(table_id):
    """Chain built straight from the transcribed rows, no construction involved."""
    g = GOLDEN[table_id].rows
    p = {1: 0, 2: 0, 3: -1, 4: -2}[table_id]
    ns = g["n"] + [0]
    rows = zip(ns, g["gamma"], g["beta"], g["h"], g["alpha"])
    return chain_from_rows(rows, p)


@pytest.fixture
def table1_chain():
    return golden_chain(1)


@pytest.fixture(params=[1, 2, 3, 4])
def any_table(request):
    return request.param, golden_chain(request.param)


# acceptance verdicts, one line per criterion, repeated in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
