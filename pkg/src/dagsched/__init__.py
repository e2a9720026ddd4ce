"""Multiprocessor DAG scheduling with a genetic algorithm and list scheduling."""

from .errors import SchedError
from .ga import GaParams, GaResult, ga_schedule
from .lsh import compute_priorities, lsh_schedule
from .oracle import brute_force_optimal
from .schedule import Placement, Schedule, makespan, simulate_queues, validate_schedule
from .taskgraph import (
    GeneratorParams,
    TaskGraph,
    compute_heights,
    critical_path_length,
    generate_random,
    lower_bound,
    total_work,
    validate_dag,
)

__version__ = "0.1.0"
