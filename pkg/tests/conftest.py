import numpy as np
import pytest

from treeschur import make_window
from treeschur.instances import rng_for

DESK_GRID = [(1, 8), (2, 2), (2, 3), (3, 2)]

# filled by test_acceptance, printed at the end of the session
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def w22():
    return make_window(2, 2)


@pytest.fixture
def w23():
    return make_window(2, 3)


@pytest.fixture(params=DESK_GRID, ids=lambda qL: f"q{qL[0]}L{qL[1]}")
def window(request):
    return make_window(*request.param)


@pytest.fixture
def rng(request):
    return rng_for(1234, request.node.name)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def unit(W, t):
    e = np.zeros(W.N, dtype=complex)
    e[W.index[t]] = 1
    return e
