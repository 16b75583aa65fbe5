import pytest
from hypothesis import settings

from ccquad import Mode, PatchSpec

settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile("ci")

PENTAGON = PatchSpec((6, 4, 3, 5, 4))
OCTAGON = PatchSpec((4, 3, 4, 3, 4, 3, 4, 3))


@pytest.fixture
def pentagon():
    return PENTAGON


@pytest.fixture
def octagon():
    return OCTAGON


@pytest.fixture(params=list(Mode), ids=lambda m: m.value)
def mode(request):
    return request.param


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one PASS/FAIL line per acceptance criterion."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
