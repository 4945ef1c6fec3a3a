import pytest
from acceptance_log import LINES as ACCEPTANCE_LINES
from hypothesis import settings

from cantornet.encoder import encode
from cantornet.fixtures import PHASE_A, PHASE_B
from cantornet.graph import parse_phase

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("fast", max_examples=25, deadline=None)
settings.load_profile("ci")


@pytest.fixture
def phase_a():
    return parse_phase(PHASE_A)


@pytest.fixture
def phase_b():
    return parse_phase(PHASE_B)


@pytest.fixture
def enc_a(phase_a):
    return encode(phase_a)


@pytest.fixture
def enc_b(phase_b):
    return encode(phase_b)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
