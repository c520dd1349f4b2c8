import numpy as np
import pytest

from octavic import cusps

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def cusp_matrix():
    return cusps.build_cusp_matrix()


@pytest.fixture(scope="session")
def rank_certificate(cusp_matrix):
    from octavic.exactla import certify_rank
    return certify_rank(cusp_matrix.entries, (10009, 1000033),
                        denominators=cusp_matrix.denominators)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
