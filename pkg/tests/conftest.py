import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from girgdim.graph import GraphInstance

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def make_graph(n, edges, weights=None):
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    return GraphInstance.from_edges(n, edges[:, 0], edges[:, 1], weights=weights)


@pytest.fixture
def k4_minus_edge():
    return make_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


@pytest.fixture
def triangle():
    return make_graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def path3():
    return make_graph(3, [(0, 1), (1, 2)])


ACCEPTANCE_LINES = []


def record_criterion(number, name, passed, detail):
    ACCEPTANCE_LINES.append((number, f"criterion {number:>2} [{'PASS' if passed else 'FAIL'}] {name}: {detail}"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
