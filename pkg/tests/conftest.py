from __future__ import annotations

import acceptance_state


def pytest_terminal_summary(terminalreporter):
    lines = acceptance_state.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
