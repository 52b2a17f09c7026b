import numpy as np
import pytest

from oslab.tensor import TensorElement


def unit(i, j, n):
    m = np.zeros((n, n), dtype=complex)
    m[i, j] = 1
    return m


def w1(n):
    """``sum_ij E_ij ⊗ E_ij`` in ``M_n ⊗ M_n``."""
    return TensorElement.from_pairs([(unit(i, j, n), unit(i, j, n)) for i in range(n) for j in range(n)])


def diag_example():
    return TensorElement.from_pairs([
        (np.diag([1.0, 0.0]), np.diag([1.0, 0.0])),
        (np.diag([0.0, 1.0]), np.diag([0.0, 1.0])),
    ])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda l: int(l.split()[1])):
            terminalreporter.write_line(line)
