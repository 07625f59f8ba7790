import sys
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ramsey_orderly.terms import Signature, parse_term  # noqa: E402

CRITERIA: list[tuple[str, str, str]] = []


@pytest.fixture
def sig():
    return Signature.binary()


@pytest.fixture
def T(sig):
    """Parse helper: ``T("f v0 v1")``."""
    return lambda text: parse_term(text, sig)


@contextmanager
def criterion(number, description):
    try:
        yield
    except BaseException:
        CRITERIA.append((number, "FAIL", description))
        raise
    CRITERIA.append((number, "PASS", description))


@pytest.fixture
def record_criterion():
    return criterion


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, description in sorted(CRITERIA, key=lambda c: int(c[0])):
        terminalreporter.write_line(f"[{status}] criterion {number}: {description}")
