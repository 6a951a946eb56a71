import numpy as np
import pytest

from heisenberg_sampling.grid import GridSpec
from heisenberg_sampling.sampling import sinc_field


@pytest.fixture(scope="session")
def S():
    """Default sinc field: 128 Gauss-Legendre nodes on [-1/2, 1/2]."""
    return sinc_field()


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def grid512():
    """512 samples of step 1/64 on [-4, 4); window edges fall on samples."""
    return GridSpec(-4.0, 1 / 64, 512)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number].line())
