"""Single-machine total-tardiness scheduling toolkit."""

from .core import (
    PAPER_P1,
    Evaluation,
    Instance,
    Job,
    Sequence,
    edd_sequence,
    evaluate,
    load_instance,
    resolve_instance,
    save_instance,
    total_tardiness,
)
from .evolver import EaParams, EaResult, convergence_check, mutate_swap, order_crossover, solve
from .generator import GenSpec, derive_seed, generate_instance, generate_suite
from .harness import RunRecord, SweepSpec, aggregate, classify, run_sweep
from .oracle import ExactResult, brute_force, subset_dp

__all__ = [
    "PAPER_P1",
    "EaParams",
    "EaResult",
    "Evaluation",
    "ExactResult",
    "GenSpec",
    "Instance",
    "Job",
    "RunRecord",
    "Sequence",
    "SweepSpec",
    "aggregate",
    "brute_force",
    "classify",
    "convergence_check",
    "derive_seed",
    "edd_sequence",
    "evaluate",
    "generate_instance",
    "generate_suite",
    "load_instance",
    "mutate_swap",
    "order_crossover",
    "resolve_instance",
    "run_sweep",
    "save_instance",
    "solve",
    "subset_dp",
    "total_tardiness",
]
