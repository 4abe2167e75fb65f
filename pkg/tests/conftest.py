import pytest

import instances

_ACCEPTANCE = []


@pytest.fixture
def pend():
    return instances.pendulum()


@pytest.fixture
def mod():
    return instances.mod_pendulum()


@pytest.fixture
def two():
    return instances.two_pendula()


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE:
        terminalreporter.write_line(line)
