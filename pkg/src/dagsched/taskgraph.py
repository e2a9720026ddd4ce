"""Weighted task DAG model, derived quantities, random generator and file format.

Tasks are identified by dense integer ids ``0..n-1``. Each task carries an
integer execution time (its weight) and edges carry precedence only: there is
no communication delay between processors.

Heights are 0-based: a task without predecessors has height 0, every other
task sits one level above its highest predecessor.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadWeight, CycleDetected, DanglingEdge, GraphError, InvalidParams, ParseError

SEED_LIMIT = 2**64


class TaskGraph:
    """Immutable weighted DAG.

    ``weights[i]`` is the duration of task ``i``; ``edges`` is the sorted tuple
    of ``(pred, succ)`` pairs. Predecessor/successor lists and heights are
    derived once at construction time.
    """

    __slots__ = ("weights", "edges", "preds", "succs", "_heights", "_topo")

    def __init__(self, weights: Iterable[int], edges: Iterable[Sequence[int]] = (), *, validate: bool = True):
        self.weights = tuple(weights)
        edge_set = set()
        for e in edges:
            u, v = e
            edge = (u, v)
            if edge in edge_set:
                raise GraphError(f"duplicate edge {u}->{v}")
            edge_set.add(edge)
        self.edges = tuple(sorted(edge_set))
        self._heights = None
        self._topo = None
        if validate:
            validate_dag(self)
        else:
            self.preds = None
            self.succs = None

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def heights(self) -> tuple:
        if self._heights is None:
            compute_heights(self)
        return self._heights

    @property
    def topo_order(self) -> tuple:
        if self._topo is None:
            validate_dag(self)
        return self._topo

    @property
    def max_height(self) -> int:
        return max(self.heights, default=0)

    def levels(self) -> list[list[int]]:
        """Task ids grouped by height, ascending ids within each level."""
        out: list[list[int]] = [[] for _ in range(self.max_height + 1)] if self.n else []
        for t, h in enumerate(self.heights):
            out[h].append(t)
        return out

    def __eq__(self, other):
        if not isinstance(other, TaskGraph):
            return NotImplemented
        return self.weights == other.weights and self.edges == other.edges

    def __hash__(self):
        return hash((self.weights, self.edges))

    def __repr__(self):
        return f"TaskGraph(n={self.n}, edges={len(self.edges)})"


def _find_cycle(n, succs, remaining):
    # Walk successors inside the unresolved set until a node repeats.
    start = min(remaining)
    seen_at = {}
    path = []
    node = start
    while node not in seen_at:
        seen_at[node] = len(path)
        path.append(node)
        node = next(s for s in succs[node] if s in remaining)
    return path[seen_at[node]:] + [node]


def validate_dag(graph: TaskGraph) -> None:
    """Check weights, edge endpoints and acyclicity; raise on the first problem.

    On success the predecessor/successor lists and a topological order are
    cached on the graph.
    """
    n = graph.n
    for t, w in enumerate(graph.weights):
        if isinstance(w, bool) or not isinstance(w, int) or w < 1:
            raise BadWeight(t, w)
    preds = [[] for _ in range(n)]
    succs = [[] for _ in range(n)]
    for u, v in graph.edges:
        if not (isinstance(u, int) and isinstance(v, int)) or not (0 <= u < n and 0 <= v < n):
            raise DanglingEdge((u, v), n)
        if u == v:
            raise CycleDetected([u, u])
        preds[v].append(u)
        succs[u].append(v)

    indeg = [len(p) for p in preds]
    order = [t for t in range(n) if indeg[t] == 0]
    i = 0
    while i < len(order):
        for s in succs[order[i]]:
            indeg[s] -= 1
            if indeg[s] == 0:
                order.append(s)
        i += 1
    if len(order) < n:
        remaining = set(range(n)) - set(order)
        raise CycleDetected(_find_cycle(n, succs, remaining))

    graph.preds = tuple(tuple(p) for p in preds)
    graph.succs = tuple(tuple(s) for s in succs)
    graph._topo = tuple(order)


def compute_heights(graph: TaskGraph) -> tuple:
    """Precedence level of every task; cached on the graph."""
    order = graph.topo_order
    heights = [0] * graph.n
    for t in order:
        ps = graph.preds[t]
        if ps:
            heights[t] = 1 + max(heights[u] for u in ps)
    graph._heights = tuple(heights)
    return graph._heights


def critical_path_length(graph: TaskGraph) -> int:
    """Largest total weight along any path (0 for an empty graph)."""
    finish = [0] * graph.n
    for t in graph.topo_order:
        start = max((finish[u] for u in graph.preds[t]), default=0)
        finish[t] = start + graph.weights[t]
    return max(finish, default=0)


def total_work(graph: TaskGraph) -> int:
    return sum(graph.weights)


def lower_bound(graph: TaskGraph, p: int) -> int:
    """max(t_cp, ceil(total_work / p)); no schedule on p processors beats it."""
    return max(critical_path_length(graph), -(-total_work(graph) // p))


@dataclass(frozen=True)
class GeneratorParams:
    n: int
    min_succ: int = 3
    max_succ: int = 6
    min_w: int = 1
    max_w: int = 25
    seed: int = 42

    def check(self) -> None:
        if self.n < 1:
            raise InvalidParams(f"n must be >= 1, got {self.n}")
        if not 1 <= self.min_succ <= self.max_succ:
            raise InvalidParams(f"need 1 <= min_succ <= max_succ, got {self.min_succ}..{self.max_succ}")
        if not 1 <= self.min_w <= self.max_w:
            raise InvalidParams(f"need 1 <= min_w <= max_w, got {self.min_w}..{self.max_w}")
        if not 0 <= self.seed < SEED_LIMIT:
            raise InvalidParams(f"seed must be a 64-bit unsigned integer, got {self.seed}")


def generate_random(params: GeneratorParams) -> TaskGraph:
    """Random layered-by-index DAG.

    Draw order from ``random.Random(seed)`` (MT19937): all ``n`` weights
    first, then for each task ``i`` in index order a successor count, clipped
    to the ``n - i - 1`` higher-indexed tasks, followed by that many distinct
    successors sampled from ``range(i + 1, n)``.
    """
    params.check()
    rng = random.Random(params.seed)
    n = params.n
    weights = [rng.randint(params.min_w, params.max_w) for _ in range(n)]
    edges = []
    for i in range(n):
        s = min(rng.randint(params.min_succ, params.max_succ), n - i - 1)
        if s:
            edges.extend((i, j) for j in rng.sample(range(i + 1, n), s))
    return TaskGraph(weights, edges)


def to_dict(graph: TaskGraph) -> dict:
    return {
        "tasks": [{"id": t, "weight": w} for t, w in enumerate(graph.weights)],
        "edges": [list(e) for e in graph.edges],
    }


def serialize(graph: TaskGraph) -> str:
    """JSON text with one task or edge record per line."""
    tasks = ",\n".join(f'    {{"id": {t}, "weight": {w}}}' for t, w in enumerate(graph.weights))
    edges = ",\n".join(f"    [{u}, {v}]" for u, v in graph.edges)
    parts = ["{", '  "tasks": [']
    if tasks:
        parts.append(tasks)
    parts += ["  ],", '  "edges": [']
    if edges:
        parts.append(edges)
    parts += ["  ]", "}", ""]
    return "\n".join(parts)


def _int_field(value, field):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", field=field)
    return value


def from_dict(doc) -> TaskGraph:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("tasks", "edges"):
        if key not in doc:
            raise ParseError("missing required key", field=key)
        if not isinstance(doc[key], list):
            raise ParseError("expected an array", field=key)
    weights = []
    for i, rec in enumerate(doc["tasks"]):
        if not isinstance(rec, dict) or "id" not in rec or "weight" not in rec:
            raise ParseError("task record needs 'id' and 'weight'", field=f"tasks[{i}]")
        tid = _int_field(rec["id"], f"tasks[{i}].id")
        if tid != i:
            raise ParseError(f"task ids must be dense and sorted; expected {i}, got {tid}", field=f"tasks[{i}].id")
        w = rec["weight"]
        if isinstance(w, bool) or not isinstance(w, int):
            raise BadWeight(tid, w)
        weights.append(w)
    edges = []
    for i, e in enumerate(doc["edges"]):
        if not isinstance(e, list) or len(e) != 2:
            raise ParseError("edge must be a [pred, succ] pair", field=f"edges[{i}]")
        edges.append((_int_field(e[0], f"edges[{i}][0]"), _int_field(e[1], f"edges[{i}][1]")))
    return TaskGraph(weights, edges)


def parse(text: str) -> TaskGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    return from_dict(doc)


def graph_digest(graph: TaskGraph) -> str:
    return hashlib.sha256(serialize(graph).encode()).hexdigest()[:16]


def load(path) -> TaskGraph:
    with open(path) as fh:
        return parse(fh.read())


def save(graph: TaskGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize(graph))
