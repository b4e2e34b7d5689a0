import numpy as np
import pytest

from hyperconvex import builtin_algebra, validate_algebra

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def algebras():
    return {name: validate_algebra(builtin_algebra(name)) for name in ("complex", "hyperbolic", "bicomplex")}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
