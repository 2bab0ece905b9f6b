import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pqmr.pqtheory import CorpusSpec, enumerate_corpus  # noqa: E402

_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def corpus():
    return enumerate_corpus(CorpusSpec(max_size=3))


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
