import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ternbool import power_set_algebra, ternary_from_boolean  # noqa: E402

ACCEPTANCE = {}


@pytest.fixture(scope="session")
def ba2():
    return power_set_algebra(1)


@pytest.fixture(scope="session")
def ba4():
    return power_set_algebra(2)


@pytest.fixture(scope="session")
def ite2(ba2):
    return ternary_from_boolean(ba2, "ite")


@pytest.fixture(scope="session")
def ite4(ba4):
    return ternary_from_boolean(ba4, "ite")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}")
