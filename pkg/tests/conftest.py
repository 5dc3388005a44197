import pytest

from heartwood import BUNDLED_NAMES, bundled, golden

ALPHA = golden()

# one line per acceptance criterion, printed in the terminal summary
VERDICTS = {}


def record(number, passed, detail):
    VERDICTS[number] = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    print(VERDICTS[number])
    return passed


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[k])


@pytest.fixture(scope="session")
def systems():
    return {name: bundled(name) for name in BUNDLED_NAMES}


@pytest.fixture
def gold():
    return bundled("SYS-GOLD")


@pytest.fixture
def shift():
    return bundled("SYS-SHIFT")


@pytest.fixture
def point():
    return bundled("SYS-POINT")


def at(sys, t):
    """Point at coordinate ``t`` on a bundled segment system."""
    return sys.tree.along(t)
