import random
import sys

import pytest
from hypothesis import settings

from torsionlab import Chart
from torsionlab.catalog import default_chart

settings.register_profile("torsionlab", max_examples=40, deadline=None)
settings.load_profile("torsionlab")


@pytest.fixture
def xy():
    return Chart(("x", "y"))


@pytest.fixture
def chart2():
    return default_chart(2)


@pytest.fixture
def chart3():
    return default_chart(3)


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.LINES:
        terminalreporter.write_line(line)
