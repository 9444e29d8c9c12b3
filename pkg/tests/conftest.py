import pytest

# criterion number -> (description, passed); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def criterion():
    def record(number, description, ok):
        ACCEPTANCE[number] = (description, bool(ok))
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {description}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        description, ok = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {description}")
