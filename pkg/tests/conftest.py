import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tracemon.corpus import AB_IND, AB_SEQ, ABD  # noqa: E402


@pytest.fixture
def ab_seq():
    return AB_SEQ


@pytest.fixture
def ab_ind():
    return AB_IND


@pytest.fixture
def abd():
    return ABD


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
