import pytest

ACCEPTANCE = {}


@pytest.fixture
def record():
    """Store (status, seconds) per criterion for the end-of-run summary."""
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        status, secs, title = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d} {status} ({secs:.2f} s) {title}")
