import contextlib

import pytest

from superquot.cli import load_corpus

_REPORT: dict = {}


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture
def criterion():
    """Context manager recording one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def record(number: int, title: str):
        try:
            yield
        except BaseException:
            _REPORT[number] = f"FAIL criterion {number}: {title}"
            print(_REPORT[number])
            raise
        _REPORT[number] = f"PASS criterion {number}: {title}"
        print(_REPORT[number])

    return record


def pytest_terminal_summary(terminalreporter):
    if _REPORT:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_REPORT):
            terminalreporter.write_line(_REPORT[k])
