import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from dunkl_riesz.measure import MultiplicitySetup

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(params=[0.0, 0.5, 1.0], ids=lambda k: f"k={k}")
def setup_1d(request):
    return MultiplicitySetup(1, request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report_line():
    """Print a check record's one-line verdict and keep it for the terminal summary."""

    def emit(record):
        line = record.line()
        print(line)
        ACCEPTANCE_LINES.append(line)
        return record

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
