import math

import pytest

from catqubit import DeformationSpec, FockSpace

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def space():
    return FockSpace(64)


@pytest.fixture(scope="session")
def zeta():
    return math.sqrt(3.0)


@pytest.fixture(scope="session")
def identity():
    return DeformationSpec.identity()


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion, then assert."""

    def check(label, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
