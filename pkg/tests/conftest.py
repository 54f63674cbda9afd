import time
from contextlib import contextmanager

import pytest

ACCEPTANCE_LINES: list = []


class Criterion:
    """Records one pass/fail line per acceptance criterion, even on failure."""

    def __init__(self, sink):
        self.sink = sink

    @contextmanager
    def __call__(self, number: int, title: str, limit: float):
        info = {"detail": ""}
        start = time.perf_counter()
        ok = False
        try:
            yield info
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            within = elapsed <= limit
            status = "PASS" if ok and within else "FAIL"
            timing = f"{elapsed:.2f}s of {limit:g}s"
            line = f"criterion {number:>2} [{status}] {title}: {info['detail']} ({timing})"
            self.sink.append(line)
            print(line)
        assert within, f"criterion {number} exceeded its runtime budget: {timing}"


@pytest.fixture
def criterion():
    return Criterion(ACCEPTANCE_LINES)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
