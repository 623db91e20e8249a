"""Shared pytest plumbing: the acceptance gate's per-criterion summary.

Each acceptance test registers one PASS/FAIL line; the hook prints them
after the run so the gate's verdict is visible without ``-s``.
"""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance gate")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
