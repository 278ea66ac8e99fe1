import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))

import pytest

from redpairs import A2Weight, weyl_char_a2


@pytest.fixture(scope="session")
def p5_table():
    # second-alcove simple character at p=5, from the alcove reflection
    return {(5, A2Weight(2, 2)): weyl_char_a2((2, 2)) - weyl_char_a2((1, 1))}


@pytest.fixture(scope="session")
def p7_table():
    return {(7, A2Weight(3, 3)): weyl_char_a2((3, 3)) - weyl_char_a2((2, 2))}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "_REPORT_LINES", []) if mod else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.line(line)
