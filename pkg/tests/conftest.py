import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(Path(__file__).resolve().parent))

from oracles import pari  # noqa: E402


@pytest.fixture
def data_dir():
    return ROOT / "data"


@pytest.fixture
def need_pari():
    if pari is None:
        pytest.skip("cypari2 not installed")
    return pari


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running sweeps")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
