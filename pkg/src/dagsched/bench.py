"""Paired GA-vs-LSH benchmark over random graph suites.

Every (n, p, seed) cell generates one graph and runs each algorithm on that
same graph. Rows record a digest of the graph so the pairing can be audited.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from .errors import EmptyInput, InvalidParams, ParseError, SchedError
from .ga import GaParams, ga_schedule
from .lsh import POLICIES, lsh_schedule
from .oracle import MAX_N, MAX_P, brute_force_optimal
from .schedule import validate_schedule
from .taskgraph import (
    GeneratorParams,
    critical_path_length,
    generate_random,
    graph_digest,
    total_work,
)

CSV_HEADER = (
    "n",
    "p",
    "seed",
    "graph_digest",
    "graph_height",
    "algorithm",
    "finish_time",
    "t_cp",
    "total_work",
    "wall_time_ms",
    "params_digest",
)
ALGORITHMS = ("GA", "LSH", "ORACLE")

DEFAULT_TASK_COUNTS = (8, 17, 23, 28, 33, 39, 44, 49, 54, 59, 69, 79, 89, 99, 100, 110)
DEFAULT_PROC_COUNTS = (2, 3, 4)


@dataclass(frozen=True)
class BenchConfig:
    task_counts: tuple = DEFAULT_TASK_COUNTS
    processor_counts: tuple = DEFAULT_PROC_COUNTS
    seeds_per_cell: int = 5
    base_seed: int = 42
    generator: GeneratorParams = GeneratorParams(n=1)
    ga: GaParams = GaParams()
    lsh_policy: str = "bottom_level"
    include_oracle: bool = False
    timing: bool = False

    def check(self) -> None:
        if not self.task_counts or not self.processor_counts:
            raise InvalidParams("task_counts and processor_counts must be nonempty")
        if self.seeds_per_cell < 1:
            raise InvalidParams("seeds_per_cell must be >= 1")
        if any(n < 1 for n in self.task_counts) or any(p < 1 for p in self.processor_counts):
            raise InvalidParams("task and processor counts must be positive")
        if self.lsh_policy not in POLICIES:
            raise InvalidParams(f"unknown LSH policy {self.lsh_policy!r}")
        self.ga.check()
        replace(self.generator, n=max(self.task_counts), seed=self.base_seed).check()

    def params_digest(self) -> str:
        ga = self.ga.as_dict()
        ga.pop("seed")
        g = self.generator
        doc = {
            "ga": ga,
            "lsh_policy": self.lsh_policy,
            "generator": [g.min_succ, g.max_succ, g.min_w, g.max_w],
        }
        return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()[:12]


@dataclass(frozen=True)
class BenchRow:
    n: int
    p: int
    seed: int
    graph_digest: str
    graph_height: int
    algorithm: str
    finish_time: int
    t_cp: int
    total_work: int
    wall_time_ms: float
    params_digest: str
    history: tuple = field(default=(), compare=False, repr=False)

    @property
    def lower_bound(self) -> int:
        return max(self.t_cp, -(-self.total_work // self.p))

    def sort_key(self):
        return (self.n, self.p, self.seed, self.algorithm)


@dataclass(frozen=True)
class SummaryRow:
    n: int
    p: int
    algorithm: str
    count: int
    mean: Fraction
    min: int
    max: int


class CellError(SchedError):
    def __init__(self, n, p, seed, cause):
        self.cell = (n, p, seed)
        super().__init__(f"cell n={n} p={p} seed={seed}: {cause}")


def _timed(fn, timing):
    t0 = time.perf_counter()
    out = fn()
    return out, (round((time.perf_counter() - t0) * 1000.0, 3) if timing else 0.0)


def run_cell(config: BenchConfig, n: int, p: int, seed: int) -> list[BenchRow]:
    try:
        graph = generate_random(replace(config.generator, n=n, seed=seed))
        common = dict(
            n=n,
            p=p,
            seed=seed,
            graph_digest=graph_digest(graph),
            graph_height=graph.max_height,
            t_cp=critical_path_length(graph),
            total_work=total_work(graph),
            params_digest=config.params_digest(),
        )
        rows = []
        ga_res, ms = _timed(lambda: ga_schedule(graph, p, replace(config.ga, seed=seed)), config.timing)
        validate_schedule(graph, ga_res.best_schedule)
        rows.append(
            BenchRow(
                algorithm="GA",
                finish_time=ga_res.best_makespan,
                wall_time_ms=ms,
                history=tuple(ga_res.history),
                **common,
            )
        )
        sched, ms = _timed(lambda: lsh_schedule(graph, p, config.lsh_policy, seed), config.timing)
        validate_schedule(graph, sched)
        rows.append(BenchRow(algorithm="LSH", finish_time=sched.makespan, wall_time_ms=ms, **common))
        if config.include_oracle and n <= MAX_N and p <= MAX_P:
            sched, ms = _timed(lambda: brute_force_optimal(graph, p), config.timing)
            rows.append(BenchRow(algorithm="ORACLE", finish_time=sched.makespan, wall_time_ms=ms, **common))
    except SchedError as exc:
        raise CellError(n, p, seed, exc) from exc
    return rows


def _cell_job(args):
    return run_cell(*args)


def run_suite(config: BenchConfig, workers: int = 1) -> list[BenchRow]:
    """Run every cell; rows come back sorted by (n, p, seed, algorithm)."""
    config.check()
    cells = [
        (config, n, p, config.base_seed + k)
        for n in config.task_counts
        for p in config.processor_counts
        for k in range(config.seeds_per_cell)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_cell_job, cells))
    else:
        chunks = [_cell_job(c) for c in cells]
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=BenchRow.sort_key)
    return rows


def format_mean(value: Fraction) -> str:
    return str((Decimal(value.numerator) / Decimal(value.denominator)).quantize(Decimal("0.01"), ROUND_HALF_UP))


def aggregate(rows) -> list[SummaryRow]:
    """Mean/min/max finish time per (n, p, algorithm).

    Cells keep their order of first appearance; algorithms are alphabetical
    inside a cell.
    """
    rows = list(rows)
    if not rows:
        raise EmptyInput("no rows")
    groups: dict = {}
    for r in rows:
        groups.setdefault((r.n, r.p), {}).setdefault(r.algorithm, []).append(r.finish_time)
    out = []
    for (n, p), algs in groups.items():
        for alg in sorted(algs):
            vals = algs[alg]
            out.append(SummaryRow(n, p, alg, len(vals), Fraction(sum(vals), len(vals)), min(vals), max(vals)))
    return out


def height_report(rows) -> list[tuple]:
    """(height, best GA time, best LSH time) per observed graph height; None marks a missing algorithm."""
    rows = list(rows)
    if not rows:
        raise EmptyInput("no rows")
    best: dict = {}
    for r in rows:
        if r.algorithm not in ("GA", "LSH"):
            best.setdefault(r.graph_height, {})
            continue
        slot = best.setdefault(r.graph_height, {})
        slot[r.algorithm] = min(slot.get(r.algorithm, r.finish_time), r.finish_time)
    return [(h, best[h].get("GA"), best[h].get("LSH")) for h in sorted(best)]


def write_csv(rows, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(
            [
                r.n,
                r.p,
                r.seed,
                r.graph_digest,
                r.graph_height,
                r.algorithm,
                r.finish_time,
                r.t_cp,
                r.total_work,
                f"{r.wall_time_ms:.3f}",
                r.params_digest,
            ]
        )


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


_INT_FIELDS = ("n", "p", "seed", "graph_height", "finish_time", "t_cp", "total_work")


def read_csv(fh) -> list[BenchRow]:
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None:
        raise EmptyInput("no rows")
    if tuple(header) != CSV_HEADER:
        raise ParseError(f"unexpected header {','.join(header)}", line=1)
    rows = []
    for line_no, rec in enumerate(reader, start=2):
        if not rec:
            continue
        if len(rec) != len(CSV_HEADER):
            raise ParseError(f"expected {len(CSV_HEADER)} fields, got {len(rec)}", line=line_no)
        vals = dict(zip(CSV_HEADER, rec))
        try:
            for k in _INT_FIELDS:
                vals[k] = int(vals[k])
        except ValueError:
            raise ParseError(f"non-integer value {vals[k]!r}", line=line_no, field=k) from None
        try:
            vals["wall_time_ms"] = float(vals["wall_time_ms"])
        except ValueError:
            raise ParseError("bad duration", line=line_no, field="wall_time_ms") from None
        if vals["algorithm"] not in ALGORITHMS:
            raise ParseError(f"unknown algorithm {vals['algorithm']!r}", line=line_no, field="algorithm")
        rows.append(BenchRow(**vals))
    if not rows:
        raise EmptyInput("no rows")
    return rows


def render_table(header, body) -> str:
    """Aligned plain-text table with `` | `` separators."""
    cells = [list(map(str, header))] + [[("-" if c is None else str(c)) for c in row] for row in body]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = [" | ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def comparison_tables(summary) -> str:
    """One GA-vs-LSH table per processor count, mean finish times per task count."""
    by_p: dict = {}
    for s in summary:
        by_p.setdefault(s.p, {}).setdefault(s.n, {})[s.algorithm] = s
    out = []
    for p in sorted(by_p):
        body = []
        for n in sorted(by_p[p]):
            algs = by_p[p][n]
            body.append(
                [n] + [format_mean(algs[a].mean) if a in algs else None for a in ("GA", "LSH")]
            )
        out.append(f"Processors: {p}\n" + render_table(("No. of tasks", "GA finish time", "LSH finish time"), body))
    return "\n".join(out)


def height_table(report) -> str:
    return render_table(("Height", "Best minimum time GA", "LSH minimum time"), report)


def summary_csv(summary) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("n", "p", "algorithm", "count", "mean", "min", "max"))
    for s in summary:
        w.writerow((s.n, s.p, s.algorithm, s.count, format_mean(s.mean), s.min, s.max))
    return buf.getvalue()


def heights_csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("height", "ga_min", "lsh_min"))
    for h, ga, lsh in report:
        w.writerow((h, "" if ga is None else ga, "" if lsh is None else lsh))
    return buf.getvalue()
