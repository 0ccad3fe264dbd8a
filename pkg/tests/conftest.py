import time

import pytest

from noetherpg.certpipe import RunConfig, run_all

# criterion number -> (ok, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def grid_report():
    """The full default grid, run once per session."""
    t0 = time.perf_counter()
    rep = run_all(RunConfig(jobs=4))
    rep.elapsed = time.perf_counter() - t0
    return rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
