"""Exhaustive optimal scheduling for tiny instances.

Every schedule is determined by which processor runs each task and the order
of tasks on each processor; decoding that pair with the queue simulation
starts every task as early as the order allows. Enumerating all assignments
and all per-processor orders therefore finds an optimum.

Processors are interchangeable, so assignments are enumerated as
restricted-growth strings (task 0 on processor 0, the first task off
processor 0 on processor 1, and so on). Relabelling processors this way never
increases the placement list lexicographically, so the tie-break survives the
symmetry reduction.

Modes:

``exact`` (default)
    per-processor orders range over all linear extensions of the precedence
    relation restricted to that processor's tasks.
``height``
    per-processor orders are nondecreasing in height, with tasks of equal
    height permuted freely. This is exactly the space the genetic algorithm
    searches; it can miss the true optimum.
"""

from __future__ import annotations

from itertools import permutations, product

from .errors import Deadlock, TooLarge
from .schedule import Schedule, _simulate, simulate_queues
from .taskgraph import TaskGraph, critical_path_length

MAX_N = 9
MAX_P = 3
MODES = ("exact", "height")


def _assignments(n: int, p: int):
    """Restricted-growth strings of length n over at most p labels."""
    if n == 0:
        return
    assign = [0] * n

    def rec(i, used):
        if i == n:
            yield tuple(assign)
            return
        for proc in range(min(used + 1, p)):
            assign[i] = proc
            yield from rec(i + 1, max(used, proc + 1))

    yield from rec(1, 1)


def _ancestors(graph: TaskGraph) -> list[int]:
    """Bitmask of all (transitive) predecessors of each task."""
    anc = [0] * graph.n
    for t in graph.topo_order:
        for u in graph.preds[t]:
            anc[t] |= anc[u] | (1 << u)
    return anc


def _linear_extensions(members, anc):
    mask = 0
    for t in members:
        mask |= 1 << t
    out = []
    seq = []

    def rec(placed, left):
        if not left:
            out.append(tuple(seq))
            return
        for t in left:
            if anc[t] & mask & ~placed:
                continue
            seq.append(t)
            rec(placed | (1 << t), [x for x in left if x != t])
            seq.pop()

    rec(0, list(members))
    return out


def _height_orders(members, heights):
    groups = {}
    for t in members:
        groups.setdefault(heights[t], []).append(t)
    per_level = [list(permutations(groups[h])) for h in sorted(groups)]
    return [sum(combo, ()) for combo in product(*per_level)]


def brute_force_optimal(graph: TaskGraph, p: int, limit_n: int = MAX_N, mode: str = "exact") -> Schedule:
    """Minimum-makespan schedule; ties go to the lexicographically smallest placement list.

    The placement list is ``(task, processor, start, finish)`` sorted by task.
    Raises TooLarge beyond ``limit_n`` tasks or ``MAX_P`` processors.
    """
    if mode not in MODES:
        raise ValueError(f"unknown oracle mode {mode!r}; choose from {', '.join(MODES)}")
    if graph.n > limit_n:
        raise TooLarge(f"brute force is capped at n <= {limit_n}; graph has {graph.n} tasks")
    if not 1 <= p <= MAX_P:
        raise TooLarge(f"brute force supports 1 <= p <= {MAX_P}; got p={p}")
    if graph.n == 0:
        return Schedule(p, [])

    w = graph.weights
    anc = _ancestors(graph)
    heights = graph.heights
    t_cp = critical_path_length(graph)
    orders = {}
    best_ft = None
    best_key = None
    for assign in _assignments(graph.n, p):
        members = [[] for _ in range(p)]
        loads = [0] * p
        for t, proc in enumerate(assign):
            members[proc].append(t)
            loads[proc] += w[t]
        # A processor never finishes before its own load is done.
        if best_ft is not None and max(max(loads), t_cp) > best_ft:
            continue
        options = []
        for m in members:
            k = tuple(m)
            if k not in orders:
                orders[k] = _linear_extensions(m, anc) if mode == "exact" else _height_orders(m, heights)
            options.append(orders[k])
        for queues in product(*options):
            try:
                finish = _simulate(graph, queues)
            except Deadlock:
                continue
            ft = max(finish)
            if best_ft is not None and ft > best_ft:
                continue
            key = tuple(
                sorted((t, proc, finish[t] - w[t], finish[t]) for proc, q in enumerate(queues) for t in q)
            )
            if best_ft is None or ft < best_ft or key < best_key:
                best_ft, best_key = ft, key

    queues = [[] for _ in range(p)]
    for t, proc, _, _ in sorted(best_key, key=lambda r: (r[1], r[2], r[0])):
        queues[proc].append(t)
    return simulate_queues(graph, queues)
