import functools
from pathlib import Path

import pytest

from ybe.braided import make_context
from ybe.solution import cycle_to_perm, enumerate_square_free, from_left_action, trivial

DATA = Path(__file__).parent / "data"


def make_sf4():
    # L_1 = L_2 = (3 4), L_3 = L_4 = (1 2)   (0-based below)
    a, b = cycle_to_perm(4, (2, 3)), cycle_to_perm(4, (0, 1))
    return from_left_action([a, a, b, b], name="SF4")


@functools.lru_cache(maxsize=None)
def enumerated(max_n=4, up_to_iso=False):
    return tuple(s for n in range(1, max_n + 1) for s in enumerate_square_free(n, up_to_iso))


@functools.lru_cache(maxsize=None)
def context_of(s):
    return make_context(s)


@pytest.fixture(scope="session")
def sf4():
    return make_sf4()


@pytest.fixture(scope="session")
def sf4_ctx(sf4):
    return context_of(sf4)


@pytest.fixture(scope="session")
def trivial3_ctx():
    return context_of(trivial(3))


# one line per acceptance criterion at the end of the run

_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.outcome == "failed":
        _acceptance[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _acceptance.items():
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
