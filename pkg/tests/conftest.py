import pytest

from unionbounds import moment_summary
from unionbounds.serialization import load_system
from unionbounds.tables import bundled_dir

PAPER_SYSTEMS = ("V", "VI", "VII", "VIII")

_acceptance_lines = []


@pytest.fixture(scope="session")
def paper_systems():
    return {name: load_system(bundled_dir() / f"system_{name.lower()}.json") for name in PAPER_SYSTEMS}


@pytest.fixture(scope="session")
def paper_summaries(paper_systems):
    return {name: moment_summary(sys_) for name, sys_ in paper_systems.items()}


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion, shown in the terminal summary."""

    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" -- {detail}" if detail else "")
        _acceptance_lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
