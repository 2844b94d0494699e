import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from linkless.graph import Graph, build_graph  # noqa: E402

_CRITERIA: dict[int, tuple[str, str]] = {}


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_perm(rng: random.Random, n: int) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


@pytest.fixture
def rng():
    return random.Random(20181217)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    number, text = mark.args
    prev = _CRITERIA.get(number, ("PASS", text))[0]
    status = "FAIL" if rep.failed or prev == "FAIL" else "PASS"
    _CRITERIA[number] = (status, text)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        status, text = _CRITERIA[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {text}")
