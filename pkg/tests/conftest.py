import numpy as np
import pytest

from twofluid import exact_riemann
from twofluid.model import ModelParams


@pytest.fixture(scope="session")
def params():
    return ModelParams(C_G=1.0, rho_L=1.0)


@pytest.fixture(scope="session")
def exp1():
    return exact_riemann.build(exact_riemann.EXPERIMENT1)


@pytest.fixture(scope="session")
def exp2():
    return exact_riemann.build(exact_riemann.EXPERIMENT2)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])
