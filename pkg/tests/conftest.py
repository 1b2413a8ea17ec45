from __future__ import annotations

import pytest

from xwalk.crosswalk import builtin_table
from xwalk.registry import builtin_registry

# criterion name -> "PASS"/"FAIL", filled by the acceptance module
ACCEPTANCE: dict[str, str] = {}


@pytest.fixture(scope="session")
def registry():
    return builtin_registry()


@pytest.fixture(scope="session")
def table():
    return builtin_table()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in ACCEPTANCE.items():
        terminalreporter.write_line(f"{verdict}  {name}")
