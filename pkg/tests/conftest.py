import contextlib
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Context manager that records one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def run(number: int, title: str):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException as e:
            line = f"criterion {number:>2} FAIL  {title}  ({type(e).__name__}: {str(e).splitlines()[0] if str(e) else ''})"
            _LINES.append(line)
            print(line)
            raise
        line = f"criterion {number:>2} PASS  {title}  [{time.perf_counter() - t0:.1f}s]"
        _LINES.append(line)
        print(line)

    return run


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES):
            terminalreporter.write_line(line)
