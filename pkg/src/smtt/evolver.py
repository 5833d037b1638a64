"""Evolutionary solver over permutation encodings.

Generational loop: the initial population holds one earliest-due-date
sequence plus uniform random permutations; each new generation keeps one
elite (the best individual) and fills the rest with offspring from size-2
tournaments, order crossover, and single-swap mutation.  All randomness
comes from one seeded ``random.Random``, so a run with wall-clock stops
disabled is fully reproducible from its seed.
"""

from __future__ import annotations

import math
import random
import secrets
import time
from dataclasses import dataclass
from typing import Callable

from .core import Instance, Sequence, edd_sequence


@dataclass(frozen=True)
class EaParams:
    """Solver parameters.

    ``convergence`` is the relative-difference threshold under which the
    population counts as settled; ``max_stall`` and ``time_limit`` are
    wall-clock budgets in seconds (``math.inf`` disables either);
    ``max_generations`` caps the loop for deterministic runs; ``seed=None``
    draws a fresh seed, reported back in the result.
    """

    population_size: int = 100
    mutation_rate: float = 0.075
    convergence: float = 0.0001
    seed: int | None = None
    max_stall: float = 30.0
    time_limit: float = 45.0
    max_generations: int | None = None
    crossover_rate: float = 0.9

    def __post_init__(self) -> None:
        if self.population_size < 2:
            raise ValueError(f"population_size must be >= 2, got {self.population_size}")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError(f"mutation_rate must be in [0, 1], got {self.mutation_rate}")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ValueError(f"crossover_rate must be in [0, 1], got {self.crossover_rate}")
        if self.convergence < 0.0:
            raise ValueError(f"convergence must be >= 0, got {self.convergence}")
        if self.seed is not None and self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        if self.max_stall <= 0.0:
            raise ValueError(f"max_stall must be positive, got {self.max_stall}")
        if self.time_limit <= 0.0:
            raise ValueError(f"time_limit must be positive, got {self.time_limit}")
        if self.max_generations is not None and self.max_generations < 0:
            raise ValueError(f"max_generations must be >= 0, got {self.max_generations}")


@dataclass(frozen=True)
class EaResult:
    best: Sequence
    best_value: int
    generations: int
    wall_time: float
    time_to_best: float
    stop_reason: str  # "converged" | "stalled" | "time_limit" | "generation_cap"
    seed_used: int

    def to_dict(self) -> dict:
        return {
            "best": list(self.best),
            "best_value": self.best_value,
            "generations": self.generations,
            "wall_time": round(self.wall_time, 6),
            "time_to_best": round(self.time_to_best, 6),
            "stop_reason": self.stop_reason,
            "seed_used": self.seed_used,
        }


def convergence_check(fitness_values: list[int], epsilon: float) -> bool:
    """True when the best 99% of the population sits within epsilon of the best.

    With b the minimum fitness and q the value at ascending rank
    ceil(0.99 * N) (1-based), returns (q - b) / (1 + |b|) <= epsilon.  The
    1 + |b| denominator keeps the relative difference defined at b = 0.
    """
    if not fitness_values:
        raise ValueError("fitness_values must be non-empty")
    ordered = sorted(fitness_values)
    b = ordered[0]
    q = ordered[math.ceil(0.99 * len(ordered)) - 1]
    return (q - b) / (1 + abs(b)) <= epsilon


def order_crossover(parent_a: Sequence, parent_b: Sequence, cut_i: int, cut_j: int) -> Sequence:
    """Order crossover (OX1) with an inclusive copied segment [cut_i, cut_j].

    The child keeps parent_a's genes on the segment; the remaining
    positions, walked cyclically from cut_j + 1, take parent_b's genes in
    the cyclic order starting at cut_j + 1, skipping genes already placed.
    """
    n = len(parent_a)
    if len(parent_b) != n:
        raise ValueError(f"parents differ in length: {n} vs {len(parent_b)}")
    if not 0 <= cut_i <= cut_j < n:
        raise ValueError(f"cut points must satisfy 0 <= cut_i <= cut_j < {n}, got {cut_i}, {cut_j}")
    segment = parent_a[cut_i : cut_j + 1]
    used = set(segment)
    child: Sequence = [0] * n
    child[cut_i : cut_j + 1] = segment
    offset = 0
    for k in range(n):
        gene = parent_b[(cut_j + 1 + k) % n]
        if gene in used:
            continue
        child[(cut_j + 1 + offset) % n] = gene
        offset += 1
    return child


def mutate_swap(seq: Sequence, rng: random.Random) -> Sequence:
    """Return a copy of seq with two distinct uniformly chosen positions swapped.

    Sequences shorter than two elements come back unchanged.
    """
    if len(seq) < 2:
        return list(seq)
    i, j = rng.sample(range(len(seq)), 2)
    out = list(seq)
    out[i], out[j] = out[j], out[i]
    return out


def _tournament(fitness: list[int], rng: random.Random) -> int:
    """Size-2 tournament; equal fitness goes to the earlier-created individual."""
    i = rng.randrange(len(fitness))
    j = rng.randrange(len(fitness))
    return i if (fitness[i], i) <= (fitness[j], j) else j


def _initial_population(instance: Instance, size: int, rng: random.Random) -> list[Sequence]:
    """One EDD sequence plus size-1 uniform random permutations (Fisher-Yates)."""
    population = [edd_sequence(instance)]
    base = list(range(1, instance.n + 1))
    for _ in range(size - 1):
        member = base.copy()
        rng.shuffle(member)
        population.append(member)
    return population


def _next_population(
    population: list[Sequence], fitness: list[int], params: EaParams, rng: random.Random
) -> list[Sequence]:
    """Breed the next generation: 1 elite, rest tournament + OX1 + swap."""
    n = len(population[0])
    elite = min(range(len(population)), key=lambda k: (fitness[k], k))
    offspring: list[Sequence] = [population[elite].copy()]
    while len(offspring) < len(population):
        a = _tournament(fitness, rng)
        b = _tournament(fitness, rng)
        if rng.random() < params.crossover_rate:
            i = rng.randrange(n)
            j = rng.randrange(n)
            if i > j:
                i, j = j, i
            child = order_crossover(population[a], population[b], i, j)
        else:
            better = a if (fitness[a], a) <= (fitness[b], b) else b
            child = population[better].copy()
        if rng.random() < params.mutation_rate:
            child = mutate_swap(child, rng)
        offspring.append(child)
    return offspring


def _fast_total(p_by: list[int], d_by: list[int], seq: Sequence) -> int:
    # hot path: sequences are valid by construction, skip revalidation
    clock = 0
    total = 0
    for jid in seq:
        clock += p_by[jid]
        late = clock - d_by[jid]
        if late > 0:
            total += late
    return total


def solve(
    instance: Instance,
    params: EaParams | None = None,
    on_generation: Callable[[int, int], None] | None = None,
) -> EaResult:
    """Run the evolutionary solver until a stop condition fires.

    Stop conditions, checked in this order after each generation is
    evaluated: population converged, no strict improvement of the best
    value for ``max_stall`` seconds, total ``time_limit`` reached,
    generation cap hit.  ``on_generation(generation, best_value)`` is
    called after each bred generation.
    """
    if params is None:
        params = EaParams()
    seed_used = params.seed if params.seed is not None else secrets.randbits(63)
    rng = random.Random(seed_used)
    start = time.perf_counter()
    p_by = instance.processing_by_id()
    d_by = instance.due_by_id()

    if instance.n == 1:
        elapsed = time.perf_counter() - start
        value = max(0, instance.jobs[0].p - instance.jobs[0].d)
        return EaResult(
            best=[1],
            best_value=value,
            generations=0,
            wall_time=elapsed,
            time_to_best=elapsed,
            stop_reason="converged",
            seed_used=seed_used,
        )

    population = _initial_population(instance, params.population_size, rng)
    fitness = [_fast_total(p_by, d_by, seq) for seq in population]
    best_idx = min(range(len(population)), key=lambda k: (fitness[k], k))
    best_seq = population[best_idx].copy()
    best_value = fitness[best_idx]
    now = time.perf_counter()
    time_to_best = now - start
    last_improvement = now
    generations = 0

    while True:
        if convergence_check(fitness, params.convergence):
            reason = "converged"
            break
        now = time.perf_counter()
        if now - last_improvement >= params.max_stall:
            reason = "stalled"
            break
        if now - start >= params.time_limit:
            reason = "time_limit"
            break
        if params.max_generations is not None and generations >= params.max_generations:
            reason = "generation_cap"
            break

        population = _next_population(population, fitness, params, rng)
        fitness = [_fast_total(p_by, d_by, seq) for seq in population]
        generations += 1
        gen_best = min(range(len(population)), key=lambda k: (fitness[k], k))
        if fitness[gen_best] < best_value:
            best_value = fitness[gen_best]
            best_seq = population[gen_best].copy()
            now = time.perf_counter()
            time_to_best = now - start
            last_improvement = now
        if on_generation is not None:
            on_generation(generations, best_value)

    return EaResult(
        best=best_seq,
        best_value=best_value,
        generations=generations,
        wall_time=time.perf_counter() - start,
        time_to_best=time_to_best,
        stop_reason=reason,
        seed_used=seed_used,
    )
