import itertools
import os
import sys

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from cubecross.cubes import generate  # noqa: E402
from cubecross.graph import Graph  # noqa: E402

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# lines printed by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2), name=f"K{n}")


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(x, a + y) for x in range(a) for y in range(b)], name=f"K{a}{b}")


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def petersen() -> Graph:
    return Graph.from_edges(10, nx.petersen_graph().edges(), name="Petersen")


@pytest.fixture(scope="session")
def cq3():
    return generate("CQ", 3)


@pytest.fixture(scope="session")
def q3():
    return generate("Q", 3)


@pytest.fixture(scope="session")
def ltq3():
    return generate("LTQ", 3)


@pytest.fixture(scope="session")
def ltq4():
    return generate("LTQ", 4)


@pytest.fixture(scope="session")
def cq4():
    return generate("CQ", 4)


@pytest.fixture(scope="session")
def k4():
    return complete(4)


@pytest.fixture(scope="session")
def k5():
    return complete(5)


@pytest.fixture(scope="session")
def k33():
    return complete_bipartite(3, 3)


@pytest.fixture(scope="session")
def order3_cubics():
    """All five order-3 family members plus Q3: the 3-regular fixtures."""
    return [
        generate("Q", 3),
        generate("CQ", 3),
        generate("LTQ", 3),
        generate("MQ", 3, 0),
        generate("MQ", 3, 1),
    ]
