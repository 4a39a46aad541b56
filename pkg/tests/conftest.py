import sys
import mpmath
import pytest

from shiftconv.forms import delta_form


@pytest.fixture(scope="session")
def delta():
    """Delta to q^10010: enough for M = 10^4 products at every shift r <= 10."""
    return delta_form(10010)


@pytest.fixture
def mp30():
    with mpmath.workdps(30):
        yield


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
