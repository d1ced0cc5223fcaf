import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from grassdecode.fields import PrimeField  # noqa: E402
from grassdecode.gabidulin import GabidulinCode, LiftedCode  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def F2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def F3():
    return PrimeField(3)


@pytest.fixture(scope="session")
def example_code():
    """The q=2, l=2, k=2, delta=2 code with g=(alpha, 1) and alpha^2 = alpha + 1."""
    return GabidulinCode(2, 2, 2, 2, g=["01", "10"], modulus=[1, 1, 1])


@pytest.fixture(scope="session")
def example_lifted(example_code):
    return LiftedCode(example_code)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
