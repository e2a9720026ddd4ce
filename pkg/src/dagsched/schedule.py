"""Timed schedules and the queue simulation that produces them.

A processor runs its queue strictly in order. The task at the head of a queue
starts once the processor is free and every predecessor has finished; until
then the processor idles. Intervals are closed-open, so a successor may start
at the exact instant its predecessor finishes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    BadDuration,
    Deadlock,
    DuplicateTask,
    MissingTask,
    NotAPartition,
    ParseError,
    PrecedenceViolation,
    ProcessorOverlap,
)
from .taskgraph import TaskGraph


@dataclass(frozen=True, order=True)
class Placement:
    task: int
    processor: int
    start: int
    finish: int


class Schedule:
    """Placements of every task on ``p`` processors, ordered by task id."""

    __slots__ = ("p", "placements", "makespan")

    def __init__(self, p: int, placements):
        self.p = p
        self.placements = tuple(sorted(placements))
        self.makespan = max((pl.finish for pl in self.placements), default=0)

    def lanes(self) -> list[list[Placement]]:
        out = [[] for _ in range(self.p)]
        for pl in sorted(self.placements, key=lambda x: (x.processor, x.start, x.task)):
            out[pl.processor].append(pl)
        return out

    def __eq__(self, other):
        if not isinstance(other, Schedule):
            return NotImplemented
        return self.p == other.p and self.placements == other.placements

    def __repr__(self):
        return f"Schedule(p={self.p}, makespan={self.makespan}, tasks={len(self.placements)})"


def makespan(schedule: Schedule) -> int:
    return max((pl.finish for pl in schedule.placements), default=0)


def check_partition(n: int, queues: Sequence[Sequence[int]]) -> None:
    seen = [False] * n
    for q in queues:
        for t in q:
            if not (isinstance(t, int) and 0 <= t < n):
                raise NotAPartition(f"queue entry {t!r} is not a task id", (t,))
            if seen[t]:
                raise NotAPartition(f"task {t} appears in more than one queue slot", (t,))
            seen[t] = True
    missing = [t for t in range(n) if not seen[t]]
    if missing:
        raise NotAPartition(f"tasks {missing} are not assigned to any queue", missing)


def _simulate(graph: TaskGraph, queues) -> list:
    """Finish time per task. Raises Deadlock if some queue head never becomes ready."""
    weights = graph.weights
    succs = graph.succs
    pending = [len(ps) for ps in graph.preds]
    ready_at = [0] * graph.n
    finish = [0] * graph.n
    pos = [0] * len(queues)
    free = [0] * len(queues)
    blocked_on = {}
    stack = list(range(len(queues) - 1, -1, -1))
    done = 0
    while stack:
        q = stack.pop()
        queue = queues[q]
        i = pos[q]
        clock = free[q]
        while i < len(queue):
            t = queue[i]
            if pending[t]:
                blocked_on[t] = q
                break
            r = ready_at[t]
            clock = (r if r > clock else clock) + weights[t]
            finish[t] = clock
            i += 1
            for v in succs[t]:
                if clock > ready_at[v]:
                    ready_at[v] = clock
                pending[v] -= 1
                if not pending[v] and v in blocked_on:
                    stack.append(blocked_on.pop(v))
        done += i - pos[q]
        pos[q] = i
        free[q] = clock
    if done < graph.n:
        stuck = sorted(blocked_on)
        raise Deadlock(f"simulation cannot progress; blocked queue heads {stuck}", stuck)
    return finish


def queues_makespan(graph: TaskGraph, queues) -> int:
    """Makespan of the queue assignment without building placements (no partition check)."""
    return max(_simulate(graph, queues), default=0)


def simulate_queues(graph: TaskGraph, queues: Sequence[Sequence[int]]) -> Schedule:
    check_partition(graph.n, queues)
    finish = _simulate(graph, queues)
    w = graph.weights
    placements = [
        Placement(t, proc, finish[t] - w[t], finish[t]) for proc, q in enumerate(queues) for t in q
    ]
    return Schedule(len(queues), placements)


def validate_schedule(graph: TaskGraph, schedule: Schedule) -> None:
    """Raise the first violated rule: coverage, durations, overlaps, precedence."""
    by_task = {}
    for pl in schedule.placements:
        if pl.task in by_task:
            raise DuplicateTask(f"task {pl.task} is placed more than once", (pl.task,))
        if not 0 <= pl.task < graph.n:
            raise MissingTask(f"placement names unknown task {pl.task}", (pl.task,))
        by_task[pl.task] = pl
    missing = [t for t in range(graph.n) if t not in by_task]
    if missing:
        raise MissingTask(f"tasks {missing} are not placed", missing)
    for pl in schedule.placements:
        if pl.start < 0 or pl.finish - pl.start != graph.weights[pl.task]:
            raise BadDuration(
                f"task {pl.task} runs [{pl.start},{pl.finish}) but has weight {graph.weights[pl.task]}",
                (pl.task,),
            )
        if not 0 <= pl.processor < schedule.p:
            raise ProcessorOverlap(f"task {pl.task} is on processor {pl.processor} of {schedule.p}", (pl.task,))
    for lane in schedule.lanes():
        for a, b in zip(lane, lane[1:]):
            if b.start < a.finish:
                raise ProcessorOverlap(
                    f"tasks {a.task} and {b.task} overlap on processor {a.processor}", (a.task, b.task)
                )
    for u, v in graph.edges:
        if by_task[u].finish > by_task[v].start:
            raise PrecedenceViolation(
                f"task {v} starts at {by_task[v].start} before predecessor {u} finishes at {by_task[u].finish}",
                (u, v),
            )


def to_dict(schedule: Schedule) -> dict:
    rows = sorted(schedule.placements, key=lambda x: (x.processor, x.start, x.task))
    return {
        "p": schedule.p,
        "placements": [
            {"task": pl.task, "processor": pl.processor, "start": pl.start, "finish": pl.finish} for pl in rows
        ],
    }


def serialize(schedule: Schedule) -> str:
    doc = to_dict(schedule)
    lines = ",\n".join("    " + json.dumps(rec) for rec in doc["placements"])
    body = f"\n{lines}\n  " if lines else ""
    return f'{{\n  "p": {doc["p"]},\n  "placements": [{body}]\n}}\n'


def parse(text: str) -> Schedule:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(doc, dict) or "p" not in doc or "placements" not in doc:
        raise ParseError("schedule needs 'p' and 'placements'")
    p = doc["p"]
    if isinstance(p, bool) or not isinstance(p, int) or p < 1:
        raise ParseError(f"processor count must be a positive integer, got {p!r}", field="p")
    placements = []
    for i, rec in enumerate(doc["placements"]):
        try:
            vals = [rec[k] for k in ("task", "processor", "start", "finish")]
        except (KeyError, TypeError):
            raise ParseError("placement needs task, processor, start, finish", field=f"placements[{i}]") from None
        if any(isinstance(v, bool) or not isinstance(v, int) for v in vals):
            raise ParseError("placement fields must be integers", field=f"placements[{i}]")
        placements.append(Placement(*vals))
    return Schedule(p, placements)


def load(path) -> Schedule:
    with open(path) as fh:
        return parse(fh.read())


def save(schedule: Schedule, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize(schedule))
