import pytest

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(number, text, passed, detail)."""

    def record(number, text, passed, detail=""):
        _CRITERIA.append((number, text, bool(passed), detail))
        status = "PASS" if passed else "FAIL"
        print(f"[{status}] criterion {number}: {text} {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, passed, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {text}  {detail}")
