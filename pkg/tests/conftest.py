import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for an acceptance criterion and print it."""

    def record(number, title, ok, seconds, limit, detail=""):
        status = "PASS" if ok and seconds < limit else "FAIL"
        line = f"criterion {number}: {status}  {title}  ({seconds:.2f}s, limit {limit}s)"
        if detail:
            line += f"  {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return status == "PASS"

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
