import contextlib

import pytest

_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Context manager that records one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def record(number: int, title: str):
        try:
            yield
        except BaseException:
            _CRITERIA.append(f"FAIL criterion {number}: {title}")
            print(_CRITERIA[-1])
            raise
        _CRITERIA.append(f"PASS criterion {number}: {title}")
        print(_CRITERIA[-1])

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_CRITERIA, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
