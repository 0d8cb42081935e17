import random

import pytest

from prelie_smatrix.catalog import A2, Z2, rA, rB, rC


@pytest.fixture
def a2():
    return A2()


@pytest.fixture
def z2():
    return Z2()


@pytest.fixture
def r_a():
    return rA()


@pytest.fixture
def r_b():
    return rB()


@pytest.fixture
def r_c():
    return rC()


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(f"criterion {number:2d}: {RESULTS[number]}")
