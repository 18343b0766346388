import numpy as np
import pytest

from sparsega import Algebra


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def pga2():
    return Algebra(2, 0, 1)


@pytest.fixture
def vga2():
    return Algebra(2)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[n])
