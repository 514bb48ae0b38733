import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import acceptance_report  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not acceptance_report.VERDICTS and not acceptance_report.NOTES:
        return
    terminalreporter.section("acceptance criteria")
    for verdict in acceptance_report.VERDICTS:
        terminalreporter.write_line(verdict.line())
    for note in acceptance_report.NOTES:
        terminalreporter.write_line(note)
