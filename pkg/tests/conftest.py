import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mfcat.poly import Ring

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"

# W, variables, expected HH dims, Milnor number
SUITE = [
    ("x^2", "x", (1, 0), 1),
    ("x^3", "x", (2, 0), 2),
    ("x^4", "x", (3, 0), 3),
    ("x*y", "x,y", (1, 0), 1),
    ("x^2 + y^2", "x,y", (1, 0), 1),
    ("x^3 + y^3", "x,y", (4, 0), 4),
]


def suite_W(text, variables):
    return Ring.of(variables)(text)


@pytest.fixture
def R1():
    return Ring.of("x")


@pytest.fixture
def R2():
    return Ring.of("x,y")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
