import pytest
from hypothesis import strategies as st

from dagsched.taskgraph import GeneratorParams, TaskGraph, generate_random

ACCEPTANCE_LINES = []


@pytest.fixture
def chain():
    return TaskGraph([2, 3, 4], [(0, 1), (1, 2)])


@pytest.fixture
def diamond():
    # A=0 (2), B=1 (3), C=2 (5), D=3 (1)
    return TaskGraph([2, 3, 5, 1], [(0, 1), (0, 2), (1, 3), (2, 3)])


@pytest.fixture
def independent():
    return TaskGraph([5, 3, 2])


@st.composite
def random_graphs(draw, max_n=25):
    n = draw(st.integers(1, max_n))
    lo = draw(st.integers(1, 4))
    hi = draw(st.integers(lo, 6))
    seed = draw(st.integers(0, 2**64 - 1))
    return generate_random(GeneratorParams(n=n, min_succ=lo, max_succ=hi, min_w=1, max_w=25, seed=seed))


@st.composite
def graph_and_queues(draw, max_n=20, max_p=4):
    """A graph plus an arbitrary height-ordered queue partition."""
    g = draw(random_graphs(max_n=max_n))
    p = draw(st.integers(1, max_p))
    assign = draw(st.lists(st.integers(0, p - 1), min_size=g.n, max_size=g.n))
    keys = draw(st.permutations(range(g.n)))
    queues = [[] for _ in range(p)]
    for t in sorted(range(g.n), key=lambda t: (g.heights[t], keys[t])):
        queues[assign[t]].append(t)
    return g, queues


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
