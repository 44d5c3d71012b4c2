import pytest

_criterion_lines: list[str] = []


@pytest.fixture
def record():
    """Collect one pass/fail line per acceptance criterion for the summary."""

    def _record(name: str, passed: bool, detail: str) -> None:
        line = f"[{name}] {'PASS' if passed else 'FAIL'}: {detail}"
        _criterion_lines.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)
