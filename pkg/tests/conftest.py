import pytest

CRITERIA = []


@pytest.fixture
def criterion(capsys):
    """Record one acceptance line: ``criterion(cid, ok, detail)``."""

    def record(cid, ok, detail=""):
        line = f"[{cid}] {'PASS' if ok else 'FAIL'}  {detail}"
        CRITERIA.append((int(cid), line))
        with capsys.disabled():
            print("\n" + line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(CRITERIA, key=lambda t: t[0]):
            terminalreporter.write_line(line)
