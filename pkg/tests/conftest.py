import pytest

CRITERION_LINES: list[str] = []


@pytest.fixture
def report_criterion(capsys):
    """Print a criterion's PASS/FAIL line immediately and keep it for the summary."""
    def emit(line: str) -> None:
        CRITERION_LINES.append(line)
        with capsys.disabled():
            print(f"\n{line}")
    return emit


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)
