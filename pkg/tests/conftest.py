import sys

import numpy as np
import pytest

from aybe.special import modular_param

TAU_SQUARE = 1j
TAU_TALL = 2j
TAU_GENERIC = 0.5 + 0.9j


@pytest.fixture(scope="session")
def m_square():
    return modular_param(TAU_SQUARE)


@pytest.fixture(scope="session")
def m_tall():
    return modular_param(TAU_TALL)


@pytest.fixture(scope="session")
def m_generic():
    return modular_param(TAU_GENERIC)


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)


def draw_disc(rng, radius, n):
    """n complex points uniform on a disc of the given radius."""
    r = radius * np.sqrt(rng.uniform(size=n))
    phi = 2.0 * np.pi * rng.uniform(size=n)
    return r * np.exp(1j * phi)


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance PASS/FAIL lines after the test summary."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance summary")
        for line in lines:
            terminalreporter.write_line(line)
