import random
import sys

import pytest

from reduction_games.streams import UPStream

ZERO = UPStream((), (0,))
ONE = UPStream((), (1,))


@pytest.fixture
def rng():
    return random.Random(12345)


def up(prefix, period):
    return UPStream(prefix, period)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num][2])
