import pytest

from manytoone.data import load_example, summarize

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def ck_data():
    return load_example()


@pytest.fixture(scope="session")
def ck_summaries(ck_data):
    return summarize(ck_data)


@pytest.fixture
def acceptance_log():
    """Record one pass/fail line per acceptance criterion."""
    def record(name, passed, detail=""):
        _ACCEPTANCE.append((name, bool(passed), detail))
        print(f"[{'PASS' if passed else 'FAIL'}] {name} {detail}")
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}  {detail}")
