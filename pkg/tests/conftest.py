import time

import numpy as np
import pytest

from .helpers import graph


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def path3():
    return graph({("p1", "p2"): 1, ("p2", "p3"): 1})


@pytest.fixture
def triangle():
    return graph({("p1", "p2"): 1, ("p2", "p3"): 1, ("p1", "p3"): 1})


# acceptance reporting: one pass/fail line per criterion

_START = time.perf_counter()
_RESULTS: dict[int, list[bool]] = {}
_TITLES: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        n, title = mark.args
        _TITLES[n] = title
        _RESULTS.setdefault(n, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_RESULTS):
        status = "PASS" if all(_RESULTS[n]) else "FAIL"
        tr.write_line(f"[{status}] criterion {n:2d}: {_TITLES[n]}")
    tr.write_line(f"session runtime {time.perf_counter() - _START:.1f} s")
