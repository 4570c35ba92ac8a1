import pytest

_CRITERIA = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of an acceptance criterion for the end-of-run summary."""

    def record(number, ok, detail):
        _CRITERIA[number] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA, key=lambda k: (isinstance(k, str), k)):
        ok, detail = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
