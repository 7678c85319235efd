import pytest

from avgksum.gen import Seed

ACCEPTANCE_LINES = []


@pytest.fixture
def seed():
    return Seed(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
