import os

import pytest

# criterion number -> (ok, detail), filled by test_acceptance
ACCEPTANCE_RESULTS = {}


@pytest.fixture(autouse=True)
def _isolate_bounds(monkeypatch):
    for name in ("XMOD_ORDER_BOUND", "XMOD_ENUM_BOUND"):
        if name in os.environ:
            monkeypatch.delenv(name)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
