"""Two independent exact solvers used as ground truth for the heuristics.

``brute_force`` enumerates every permutation; ``subset_dp`` runs a
dynamic program over job subsets.  They share no code beyond the instance
accessors, so agreement between them is strong evidence of correctness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .core import Instance, Sequence

BRUTE_FORCE_MAX_N = 11
SUBSET_DP_MAX_N = 20


@dataclass(frozen=True)
class ExactResult:
    """Exact optimum with a witness sequence achieving it.

    ``explored`` counts permutations evaluated (enumeration) or subset
    states filled (DP, 2^n including the empty set).
    """

    optimum: int
    witness: Sequence
    method: str  # "enumeration" | "subset-dp"
    explored: int

    def to_dict(self) -> dict:
        return {
            "optimum": self.optimum,
            "witness": list(self.witness),
            "method": self.method,
            "explored": self.explored,
        }


def brute_force(instance: Instance) -> ExactResult:
    """Exhaustive enumeration of all n! sequences (n <= 11).

    Permutations are visited in lexicographic order and ties are never
    replaced, so the witness is the lexicographically smallest minimizer.
    """
    n = instance.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(
            f"brute_force handles n <= {BRUTE_FORCE_MAX_N} (got n={n}); use subset_dp"
        )
    p_by = instance.processing_by_id()
    d_by = instance.due_by_id()
    best: int | None = None
    witness: tuple[int, ...] = ()
    for perm in itertools.permutations(range(1, n + 1)):
        clock = 0
        total = 0
        for jid in perm:
            clock += p_by[jid]
            late = clock - d_by[jid]
            if late > 0:
                total += late
                # prefix totals only grow, so anything already worse than the
                # incumbent cannot become a new minimum (or tie for one)
                if best is not None and total > best:
                    break
        if best is None or total < best:
            best = total
            witness = perm
    assert best is not None
    return ExactResult(
        optimum=best,
        witness=list(witness),
        method="enumeration",
        explored=math.factorial(n),
    )


def subset_dp(instance: Instance) -> ExactResult:
    """Exact optimum by dynamic programming over job subsets (n <= 20).

    For a set S scheduled first, the job placed last in S completes at the
    sum of processing times over S, regardless of order.  Hence
    best(S) = min over j in S of best(S minus j) + tardiness of j at that
    completion time, with best(empty) = 0.  Subsets are n-bit masks, bit
    i-1 standing for job id i; candidate last jobs are scanned in ascending
    id order and replaced only on strict improvement, so ties resolve to
    the smallest id.
    """
    n = instance.n
    if n > SUBSET_DP_MAX_N:
        raise ValueError(f"subset_dp handles n <= {SUBSET_DP_MAX_N} (got n={n})")
    p_by = instance.processing_by_id()
    d_by = instance.due_by_id()
    size = 1 << n

    psum = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        psum[mask] = psum[mask ^ low] + p_by[low.bit_length()]

    best = [0] * size
    last = [0] * size
    for mask in range(1, size):
        finish = psum[mask]
        cell_best = -1
        cell_last = 0
        rest = mask
        while rest:
            low = rest & -rest
            jid = low.bit_length()
            late = finish - d_by[jid]
            cand = best[mask ^ low] + (late if late > 0 else 0)
            if cell_best < 0 or cand < cell_best:
                cell_best = cand
                cell_last = jid
            rest ^= low
        best[mask] = cell_best
        last[mask] = cell_last

    witness: list[int] = []
    mask = size - 1
    while mask:
        jid = last[mask]
        witness.append(jid)
        mask ^= 1 << (jid - 1)
    witness.reverse()

    return ExactResult(
        optimum=best[size - 1],
        witness=witness,
        method="subset-dp",
        explored=size,
    )
