import time

import pytest

ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    """Record one acceptance criterion: ``with criterion(n, title, budget) as c: ... c.ok = ...``."""

    class _Run:
        def __init__(self, n, title, budget=None, part=""):
            self.n, self.title, self.budget, self.part = n, title, budget, part
            self.ok = False
            self.detail = ""

        def __enter__(self):
            self.start = time.perf_counter()
            return self

        def __exit__(self, exc_type, exc, tb):
            elapsed = time.perf_counter() - self.start
            ok = self.ok and exc_type is None
            detail = self.detail or (f"{exc_type.__name__}: {exc}" if exc_type else "")
            if self.budget is not None and elapsed >= self.budget:
                ok = False
                detail = f"runtime {elapsed:.1f}s exceeds {self.budget}s"
            ACCEPTANCE[self.n, self.part] = (self.title, ok, elapsed, detail)
            if exc_type is None:
                assert ok, detail
            return False

    return _Run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, part in sorted(ACCEPTANCE):
        title, ok, elapsed, detail = ACCEPTANCE[n, part]
        label = f"{n} ({part})" if part else f"{n}"
        line = f"criterion {label}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s)"
        if detail and not ok:
            line += f"  {detail}"
        terminalreporter.write_line(line)
