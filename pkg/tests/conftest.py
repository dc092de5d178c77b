import numpy as np
import pytest

ACCEPTANCE_LINES = []


def random_symmetric(rng, n, low=-1.0, high=1.0, zero_diagonal=False):
    a = rng.uniform(low, high, size=(n, n))
    a = np.triu(a) + np.triu(a, 1).T
    if zero_diagonal:
        np.fill_diagonal(a, 0.0)
    return a


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def triangle():
    return np.ones((3, 3)) - np.eye(3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
