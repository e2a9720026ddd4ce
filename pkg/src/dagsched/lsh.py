"""List scheduling heuristic.

Priorities are computed once from the graph. Whenever a processor is free, it
takes the ready task of highest priority; ties between equal-priority ready
tasks are broken uniformly at random from a seeded generator. A processor with
nothing ready idles until the next task finishes.
"""

from __future__ import annotations

import heapq
import random

from .errors import InvalidParams, InvalidProcessorCount
from .schedule import Placement, Schedule
from .taskgraph import TaskGraph

POLICIES = ("bottom_level", "height", "weight")


def compute_priorities(graph: TaskGraph, policy: str = "bottom_level") -> list[int]:
    if policy == "bottom_level":
        prio = [0] * graph.n
        for t in reversed(graph.topo_order):
            prio[t] = graph.weights[t] + max((prio[s] for s in graph.succs[t]), default=0)
        return prio
    if policy == "height":
        return [-h for h in graph.heights]
    if policy == "weight":
        return list(graph.weights)
    raise InvalidParams(f"unknown priority policy {policy!r}; choose from {', '.join(POLICIES)}")


def lsh_schedule(graph: TaskGraph, p: int, policy: str = "bottom_level", seed: int = 0) -> Schedule:
    if isinstance(p, bool) or not isinstance(p, int) or p < 1:
        raise InvalidProcessorCount(f"processor count must be >= 1, got {p!r}")
    prio = compute_priorities(graph, policy)
    rng = random.Random(seed)
    pending = [len(ps) for ps in graph.preds]
    ready = [t for t in range(graph.n) if not pending[t]]
    free_at = [0] * p
    running = []  # heap of (finish, task)
    placements = []
    now = 0
    while len(placements) < graph.n:
        while running and running[0][0] <= now:
            _, t = heapq.heappop(running)
            for s in graph.succs[t]:
                pending[s] -= 1
                if not pending[s]:
                    ready.append(s)
        for proc in range(p):
            if free_at[proc] > now or not ready:
                continue
            best = max(prio[t] for t in ready)
            ties = sorted(t for t in ready if prio[t] == best)
            t = ties[rng.randrange(len(ties))] if len(ties) > 1 else ties[0]
            ready.remove(t)
            end = now + graph.weights[t]
            free_at[proc] = end
            heapq.heappush(running, (end, t))
            placements.append(Placement(t, proc, now, end))
        if running:
            now = running[0][0]
    return Schedule(p, placements)
