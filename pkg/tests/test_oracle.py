import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dagsched.errors import TooLarge
from dagsched.oracle import brute_force_optimal
from dagsched.schedule import validate_schedule
from dagsched.taskgraph import GeneratorParams, TaskGraph, generate_random, lower_bound

from conftest import random_graphs


def timeline_optimum(g, p):
    """Exact optimum by trying every start-time vector on an integer grid and packing into p lanes."""
    horizon = sum(g.weights)
    best = None
    for starts in itertools.product(range(horizon), repeat=g.n):
        if any(starts[u] + g.weights[u] > starts[v] for u, v in g.edges):
            continue
        end = max(s + w for s, w in zip(starts, g.weights))
        if best is not None and end >= best:
            continue
        # interval graph: p lanes suffice iff max overlap <= p
        if all(sum(1 for s, w in zip(starts, g.weights) if s <= t < s + w) <= p for t in range(end)):
            best = end
    return best


def test_examples(chain, independent, diamond):
    assert brute_force_optimal(chain, 2).makespan == 9
    assert brute_force_optimal(independent, 2).makespan == 5
    s = brute_force_optimal(diamond, 2)
    assert s.makespan == 8 == lower_bound(diamond, 2)


@pytest.mark.parametrize(
    "g",
    [
        TaskGraph([2, 3, 5, 1], [(0, 1), (0, 2), (1, 3), (2, 3)]),
        TaskGraph([2, 2, 3, 1], [(0, 3)]),
        TaskGraph([1, 3, 1, 2], [(0, 2), (1, 3)]),
    ],
)
def test_matches_timeline_enumeration(g):
    assert brute_force_optimal(g, 2).makespan == timeline_optimum(g, 2)


def test_limits():
    with pytest.raises(TooLarge):
        brute_force_optimal(generate_random(GeneratorParams(n=20, seed=1)), 2)
    with pytest.raises(TooLarge):
        brute_force_optimal(TaskGraph([1, 1]), 4)


def test_tie_break_is_lexicographic():
    s = brute_force_optimal(TaskGraph([1, 1, 1, 1]), 2)
    assert [(pl.task, pl.processor, pl.start) for pl in s.placements] == [(0, 0, 0), (1, 0, 1), (2, 1, 0), (3, 1, 1)]


def test_height_mode_can_miss_the_optimum():
    # Optimum runs task 2 (height 0) after task 1 (height 1) on the same processor.
    g = TaskGraph([2, 5, 7, 4, 8, 5], [(0, 1), (0, 5), (1, 3), (1, 5), (2, 5), (3, 5), (4, 5)])
    exact = brute_force_optimal(g, 2)
    assert exact.makespan == 19
    assert brute_force_optimal(g, 2, mode="height").makespan == 20
    lane = [pl.task for pl in exact.lanes()[0]]
    assert lane.index(1) < lane.index(2)


@settings(max_examples=40, deadline=None)
@given(random_graphs(max_n=6), st.integers(1, 3))
def test_modes_and_bounds(g, p):
    exact = brute_force_optimal(g, p)
    validate_schedule(g, exact)
    assert exact.makespan >= lower_bound(g, p)
    assert exact.makespan <= brute_force_optimal(g, p, mode="height").makespan
    assert exact == brute_force_optimal(g, p)
