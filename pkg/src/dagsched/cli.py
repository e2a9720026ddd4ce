"""Command-line front end.

Exit codes: 0 ok, 1 data error, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import bench, gantt, schedule as sched_io, taskgraph
from .errors import SchedError, TooLarge
from .ga import GaParams, ga_schedule
from .lsh import POLICIES, lsh_schedule
from .oracle import brute_force_optimal
from .schedule import validate_schedule

EXIT_DATA = 1
EXIT_LIMIT = 3


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonneg_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _seed(text):
    value = _nonneg_int(text)
    if value >= taskgraph.SEED_LIMIT:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _rate(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a probability, got {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {value}")
    return value


def _int_list(text):
    try:
        values = tuple(_positive_int(x) for x in text.split(",") if x.strip())
    except argparse.ArgumentTypeError as exc:
        raise argparse.ArgumentTypeError(f"bad list {text!r}: {exc}") from None
    if not values:
        raise argparse.ArgumentTypeError("list must not be empty")
    return values


def _add_generator_flags(p):
    p.add_argument("--min-succ", type=_positive_int, default=3)
    p.add_argument("--max-succ", type=_positive_int, default=6)
    p.add_argument("--min-w", type=_positive_int, default=1)
    p.add_argument("--max-w", type=_positive_int, default=25)


def _add_ga_flags(p):
    p.add_argument("--pop", type=_positive_int, default=20, help="population size")
    p.add_argument("--gens", type=_nonneg_int, default=500, help="number of generations")
    p.add_argument("--cx-rate", type=_rate, default=0.8)
    p.add_argument("--mut-rate", type=_rate, default=0.1)
    p.add_argument("--elitism", type=_nonneg_int, default=1)
    p.add_argument("--stall", type=_positive_int, default=None, help="stop after this many generations without improvement")
    p.add_argument("--seed-lsh", action="store_true", help="seed one initial individual from the LSH schedule")


def _ga_params(args, seed):
    return GaParams(
        population_size=args.pop,
        max_generations=args.gens,
        crossover_rate=args.cx_rate,
        mutation_rate=args.mut_rate,
        elitism_count=args.elitism,
        seed=seed,
        stall_generations=args.stall,
        seed_with_lsh=args.seed_lsh,
    )


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_generate(args):
    params = taskgraph.GeneratorParams(
        n=args.tasks,
        min_succ=args.min_succ,
        max_succ=args.max_succ,
        min_w=args.min_w,
        max_w=args.max_w,
        seed=args.seed,
    )
    _write(taskgraph.serialize(taskgraph.generate_random(params)), args.output)
    return 0


def cmd_schedule(args):
    graph = taskgraph.load(args.graph)
    if args.alg == "lsh":
        result = lsh_schedule(graph, args.procs, args.policy, args.seed)
    elif args.alg == "ga":
        result = ga_schedule(graph, args.procs, _ga_params(args, args.seed)).best_schedule
    else:
        result = brute_force_optimal(graph, args.procs)
    validate_schedule(graph, result)
    if args.output:
        sched_io.save(result, args.output)
    print("algorithm,n,p,finish_time,t_cp")
    print(f"{args.alg},{graph.n},{args.procs},{result.makespan},{taskgraph.critical_path_length(graph)}")
    return 0


def cmd_gantt(args):
    graph = taskgraph.load(args.graph)
    result = sched_io.load(args.schedule)
    validate_schedule(graph, result)
    fmt = args.format
    if fmt is None:
        fmt = "svg" if args.output and args.output.lower().endswith(".svg") else "ascii"
    if fmt == "svg":
        if not args.output:
            raise SchedError("SVG output needs -o PATH")
        from .plotting import gantt_svg

        gantt_svg(result, args.output)
    else:
        _write(gantt.render_ascii(result), args.output)
    return 0


def cmd_bench(args):
    config = bench.BenchConfig(
        task_counts=args.task_counts,
        processor_counts=args.proc_counts,
        seeds_per_cell=args.seeds_per_cell,
        base_seed=args.seed,
        generator=taskgraph.GeneratorParams(
            n=1, min_succ=args.min_succ, max_succ=args.max_succ, min_w=args.min_w, max_w=args.max_w
        ),
        ga=_ga_params(args, 0),
        lsh_policy=args.policy,
        include_oracle=args.oracle,
        timing=args.timing,
    )
    rows = bench.run_suite(config, workers=args.workers)
    _write(bench.rows_to_csv(rows), args.output)
    return 0


def cmd_report(args):
    with open(args.results, newline="") as fh:
        rows = bench.read_csv(fh)
    summary = bench.aggregate(rows)
    heights = bench.height_report(rows)
    text = bench.comparison_tables(summary) + "\nPrecedence height vs best finish time\n" + bench.height_table(heights)
    sys.stdout.write(text)
    if args.output:
        from .plotting import trend_svg

        os.makedirs(args.output, exist_ok=True)
        _write(text, os.path.join(args.output, "summary.txt"))
        _write(bench.summary_csv(summary), os.path.join(args.output, "summary.csv"))
        _write(bench.heights_csv(heights), os.path.join(args.output, "heights.csv"))
        trend_svg(summary, os.path.join(args.output, "trend.svg"))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="dagsched", description="Multiprocessor DAG scheduling: GA vs list scheduling")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a random task graph")
    p.add_argument("--tasks", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, default=42)
    _add_generator_flags(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("schedule", help="schedule a graph file")
    p.add_argument("graph")
    p.add_argument("--alg", choices=("lsh", "ga", "bruteforce"), required=True)
    p.add_argument("--procs", type=_positive_int, required=True)
    p.add_argument("--policy", choices=POLICIES, default="bottom_level")
    p.add_argument("--seed", type=_seed, default=42)
    _add_ga_flags(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("gantt", help="render a schedule as ASCII or SVG")
    p.add_argument("graph")
    p.add_argument("schedule")
    p.add_argument("--format", choices=("ascii", "svg"))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gantt)

    p = sub.add_parser("bench", help="run the paired GA/LSH benchmark")
    p.add_argument("--task-counts", type=_int_list, default=bench.DEFAULT_TASK_COUNTS)
    p.add_argument("--proc-counts", type=_int_list, default=bench.DEFAULT_PROC_COUNTS)
    p.add_argument("--seeds-per-cell", type=_positive_int, default=5)
    p.add_argument("--seed", type=_seed, default=42, help="first generator seed; cell k uses seed + k")
    _add_generator_flags(p)
    p.add_argument("--policy", choices=POLICIES, default="bottom_level")
    _add_ga_flags(p)
    p.add_argument("--oracle", action="store_true", help="add brute-force rows where the instance is small enough")
    p.add_argument("--timing", action="store_true", help="record wall-clock times (output is then not reproducible)")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("report", help="summarize a results CSV")
    p.add_argument("results")
    p.add_argument("-o", "--output", help="directory for summary files and trend.svg")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (SchedError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
