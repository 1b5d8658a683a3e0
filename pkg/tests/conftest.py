import random

import pytest
from hypothesis import HealthCheck, settings

from hoelder.seq import SummabilityConfig

settings.register_profile(
    "hoelder",
    deadline=None,
    max_examples=200,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("hoelder")


@pytest.fixture
def cfg():
    return SummabilityConfig()


@pytest.fixture
def small_cfg():
    """Short ladder for tests that only need the exact branch or a quick answer."""
    return SummabilityConfig(n_max=5_000)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
