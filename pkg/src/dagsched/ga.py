"""Genetic algorithm over height-ordered processor queues.

An individual holds one task queue per processor. Inside every queue tasks
appear in nondecreasing height, which keeps every individual decodable: the
lowest-height unfinished task always has its predecessors done, so some queue
head is always ready.

Operators:

* crossover cuts both parents at a random height ``c`` and swaps the parts of
  every queue that hold tasks of height ``>= c``;
* mutation swaps the positions of two tasks that share a height;
* selection is roulette-wheel on ``max(FT) - FT + 1``;
* the ``elitism`` best individuals survive unchanged.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field

from .errors import InvalidParams
from .schedule import Schedule, check_partition, queues_makespan, simulate_queues
from .taskgraph import SEED_LIMIT, TaskGraph


@dataclass(frozen=True)
class GaParams:
    population_size: int = 20
    max_generations: int = 500
    crossover_rate: float = 0.8
    mutation_rate: float = 0.1
    elitism_count: int = 1
    seed: int = 0
    stall_generations: int | None = None
    seed_with_lsh: bool = False

    def check(self) -> None:
        if self.population_size < 2:
            raise InvalidParams(f"population_size must be >= 2, got {self.population_size}")
        if self.max_generations < 0:
            raise InvalidParams(f"max_generations must be >= 0, got {self.max_generations}")
        for name in ("crossover_rate", "mutation_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise InvalidParams(f"{name} must lie in [0, 1], got {rate}")
        if not 0 <= self.elitism_count < self.population_size:
            raise InvalidParams(
                f"elitism_count must satisfy 0 <= elitism < population_size, got {self.elitism_count}"
            )
        if not 0 <= self.seed < SEED_LIMIT:
            raise InvalidParams(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.stall_generations is not None and self.stall_generations < 1:
            raise InvalidParams("stall_generations must be >= 1 when given")

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class GaResult:
    best_schedule: Schedule
    best_makespan: int
    history: list[int] = field(default_factory=list)
    best_chromosome: tuple = ()


def is_valid_chromosome(graph: TaskGraph, queues) -> bool:
    try:
        check_partition(graph.n, queues)
    except Exception:
        return False
    h = graph.heights
    return all(h[a] <= h[b] for q in queues for a, b in zip(q, q[1:]))


def random_chromosome(graph: TaskGraph, p: int, rng: random.Random) -> list[list[int]]:
    assign = [rng.randrange(p) for _ in range(graph.n)]
    order = list(range(graph.n))
    rng.shuffle(order)
    heights = graph.heights
    order.sort(key=heights.__getitem__)
    queues = [[] for _ in range(p)]
    for t in order:
        queues[assign[t]].append(t)
    return queues


def decode(graph: TaskGraph, chromosome) -> Schedule:
    return simulate_queues(graph, chromosome)


def fitness(makespans) -> list[int]:
    worst = max(makespans)
    return [worst - ft + 1 for ft in makespans]


def _split(queue, heights, cut):
    i = 0
    while i < len(queue) and heights[queue[i]] < cut:
        i += 1
    return i


def crossover(parent_a, parent_b, graph: TaskGraph, rng: random.Random, cut: int | None = None):
    """Exchange the height >= cut parts of every queue between two parents.

    Returns copies of the parents when the graph has no edges (every task at
    height 0), since no cut height exists.
    """
    top = graph.max_height
    if top == 0:
        return [list(q) for q in parent_a], [list(q) for q in parent_b]
    if cut is None:
        cut = rng.randint(1, top)
    heights = graph.heights
    child_a, child_b = [], []
    for qa, qb in zip(parent_a, parent_b):
        ia = _split(qa, heights, cut)
        ib = _split(qb, heights, cut)
        child_a.append(qa[:ia] + qb[ib:])
        child_b.append(qb[:ib] + qa[ia:])
    return child_a, child_b


def mutate(chromosome, graph: TaskGraph, rng: random.Random):
    """Swap two same-height tasks; returns a new chromosome (the input is untouched)."""
    levels = [lvl for lvl in graph.levels() if len(lvl) >= 2]
    out = [list(q) for q in chromosome]
    if not levels:
        return out
    level = levels[rng.randrange(len(levels))]
    a, b = rng.sample(level, 2)
    where = {}
    for qi, q in enumerate(out):
        for pos, t in enumerate(q):
            if t == a or t == b:
                where[t] = (qi, pos)
    (qa, pa), (qb, pb) = where[a], where[b]
    out[qa][pa], out[qb][pb] = b, a
    return out


def _key(chromosome):
    return tuple(tuple(q) for q in chromosome)


def ga_schedule(graph: TaskGraph, p: int, params: GaParams | None = None) -> GaResult:
    params = params or GaParams()
    params.check()
    if p < 1:
        raise InvalidParams(f"processor count must be >= 1, got {p}")
    rng = random.Random(params.seed)
    cache: dict = {}

    def evaluate(chrom):
        k = _key(chrom)
        ft = cache.get(k)
        if ft is None:
            ft = cache[k] = queues_makespan(graph, chrom)
        return ft

    population = [random_chromosome(graph, p, rng) for _ in range(params.population_size)]
    if params.seed_with_lsh:
        from .lsh import lsh_schedule

        population[0] = _queues_from_schedule(graph, lsh_schedule(graph, p, seed=params.seed))
    scores = [evaluate(c) for c in population]
    best_i = min(range(len(scores)), key=scores.__getitem__)
    best = (scores[best_i], [list(q) for q in population[best_i]])
    history = [best[0]]
    stall = 0

    for _ in range(params.max_generations):
        ranked = sorted(range(len(population)), key=scores.__getitem__)
        elites = [[list(q) for q in population[i]] for i in ranked[: params.elitism_count]]

        weights = fitness(scores)
        picked = rng.choices(range(len(population)), weights=weights, k=params.population_size)
        offspring = [population[i] for i in picked]
        for j in range(0, len(offspring) - 1, 2):
            if rng.random() < params.crossover_rate:
                offspring[j], offspring[j + 1] = crossover(offspring[j], offspring[j + 1], graph, rng)
        for j in range(len(offspring)):
            if rng.random() < params.mutation_rate:
                offspring[j] = mutate(offspring[j], graph, rng)

        population = elites + offspring[: params.population_size - len(elites)]
        scores = [evaluate(c) for c in population]
        gen_best = min(range(len(scores)), key=scores.__getitem__)
        history.append(scores[gen_best])
        if scores[gen_best] < best[0]:
            best = (scores[gen_best], [list(q) for q in population[gen_best]])
            stall = 0
        else:
            stall += 1
            if params.stall_generations is not None and stall >= params.stall_generations:
                break

    schedule = decode(graph, best[1])
    return GaResult(schedule, schedule.makespan, history, _key(best[1]))


def _queues_from_schedule(graph: TaskGraph, schedule: Schedule):
    # Per-processor order by start time, then restore height order so the individual stays valid.
    heights = graph.heights
    queues = [[pl.task for pl in lane] for lane in schedule.lanes()]
    return [sorted(q, key=heights.__getitem__) for q in queues]
