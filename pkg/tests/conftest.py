import pytest

_RESULTS = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the summary is printed at the end of the run."""
    def record(number: int, title: str, passed: bool, detail: str = ""):
        line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else "")
        _RESULTS.append((number, line))
        print(line)
        assert passed, line
    return record


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_RESULTS):
            terminalreporter.write_line(line)
