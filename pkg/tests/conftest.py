import pytest

from drinfeld_elliptic.orders import CurveRings

import curvekit

def pytest_terminal_summary(terminalreporter):
    lines = curvekit.ACCEPTANCE_LINES
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])


@pytest.fixture(scope="session")
def f2curve():
    return curvekit.hyper(curvekit.F2_CURVE)


@pytest.fixture(scope="session")
def f7curve():
    return curvekit.hyper(curvekit.F7_CURVE)


@pytest.fixture(scope="session")
def f2curve_rings(f2curve):
    return CurveRings(f2curve)


@pytest.fixture(scope="session")
def f7curve_rings(f7curve):
    return CurveRings(f7curve)
