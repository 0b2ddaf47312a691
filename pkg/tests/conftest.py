import contextlib
import json
import time
from pathlib import Path

import pytest

from causal_teams import load_team

DATA = Path(__file__).resolve().parent.parent / "data"

_RESULTS = []


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def partial_team():
    return load_team(DATA / "partial.json")


@pytest.fixture
def selection_team():
    return load_team(DATA / "selection.json")


@pytest.fixture
def additive():
    return load_team(DATA / "additive.json")


@pytest.fixture
def unknown_team():
    return load_team(DATA / "unknown_values.json")


@pytest.fixture
def criterion():
    """Context manager recording one acceptance criterion as PASS/FAIL."""

    @contextlib.contextmanager
    def run(number, title):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            _RESULTS.append((number, title, "FAIL", time.perf_counter() - start))
            raise
        _RESULTS.append((number, title, "PASS", time.perf_counter() - start))

    return run


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status, secs in sorted(_RESULTS):
        terminalreporter.write_line(f"[{status}] AC{number:<2} {title} ({secs:.2f}s)")
