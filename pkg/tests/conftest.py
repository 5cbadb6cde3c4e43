"""Shared threshold runs (seconds to a minute each, computed once per session) and the
acceptance summary printed at the end of the run."""

import time

import pytest

from warpvol.threshold import SearchSettings, epsilon_star_H, epsilon_star_envelope

ACCEPTANCE_LINES = []
TIMINGS = {}


def _timed(key, func, *args):
    start = time.perf_counter()
    out = func(*args)
    TIMINGS[key] = time.perf_counter() - start
    return out


@pytest.fixture(scope="session")
def envelope3():
    return _timed("envelope3", epsilon_star_envelope, 3)


@pytest.fixture(scope="session")
def envelope3_doubled():
    return _timed("envelope3_doubled", epsilon_star_envelope, 3, SearchSettings().doubled())


@pytest.fixture(scope="session")
def H3():
    return epsilon_star_H(3)


@pytest.fixture(scope="session")
def H4():
    return epsilon_star_H(4)


@pytest.fixture(scope="session")
def H4_fine():
    return epsilon_star_H(4, SearchSettings(m_grid=1024))


@pytest.fixture(scope="session")
def timings():
    return TIMINGS


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
