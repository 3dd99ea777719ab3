import pytest

from soficent.groups import cyclic, integers, lattice2
from soficent.shifts import fixed_point, full_shift, golden_mean


@pytest.fixture
def Z():
    return integers()


@pytest.fixture
def Z2():
    return lattice2()


@pytest.fixture
def C6():
    return cyclic(6)


@pytest.fixture
def fs(Z):
    return full_shift(Z, 2)


@pytest.fixture
def gm(Z):
    return golden_mean(Z)


@pytest.fixture
def fp(Z):
    return fixed_point(Z)


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
