"""Shared pytest hooks: replay the acceptance gate lines after the run.

Capture swallows in-test prints for passing tests, so the acceptance
tests register their one-line verdicts here and the terminal summary
prints them where they are always visible.
"""

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance gate")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
