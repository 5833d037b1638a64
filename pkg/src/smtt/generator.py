"""Seeded random instance generation.

Instances draw integer processing times and due dates independently from
inclusive discrete-uniform ranges.  Defaults match the benchmark recipe used
throughout this project: ten jobs, processing times in [10, 20], due dates in
[50, 150].

Reproducibility contract
------------------------
* The RNG is Python's ``random.Random`` (Mersenne Twister), seeded with the
  spec's seed.  For one instance, the n processing times are drawn first
  (``randint(p_min, p_max)`` per job, ids ascending), then the n due dates.
* Suite generation derives one seed per instance with :func:`derive_seed`:
  SHA-256 over the ASCII string ``"{master}:{k}"`` (k is the 1-based instance
  number), taking the first 8 digest bytes big-endian, shifted right one bit
  to keep the value in the non-negative 63-bit range.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, replace

from .core import Instance, Job


@dataclass(frozen=True)
class GenSpec:
    """Recipe for one random instance: job count, value ranges, and seed."""

    n: int = 10
    p_min: int = 10
    p_max: int = 20
    d_min: int = 50
    d_max: int = 150
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 1 <= self.p_min <= self.p_max:
            raise ValueError(
                f"processing-time bounds must satisfy 1 <= p_min <= p_max, "
                f"got [{self.p_min}, {self.p_max}]"
            )
        if not 0 <= self.d_min <= self.d_max:
            raise ValueError(
                f"due-date bounds must satisfy 0 <= d_min <= d_max, "
                f"got [{self.d_min}, {self.d_max}]"
            )
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")


def derive_seed(master: int, *parts: int) -> int:
    """Mix a master seed with index parts into a stable 63-bit derived seed.

    The mix is SHA-256 over the decimal renderings joined with ":", first
    8 bytes big-endian, right-shifted by one bit.  Documented so that suites
    and sweeps are reproducible from their seed alone.
    """
    text = ":".join(str(x) for x in (master, *parts))
    digest = hashlib.sha256(text.encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def generate_instance(spec: GenSpec, name: str | None = None) -> Instance:
    """Draw one instance; fully determined by the spec (including its seed)."""
    rng = random.Random(spec.seed)
    ps = [rng.randint(spec.p_min, spec.p_max) for _ in range(spec.n)]
    ds = [rng.randint(spec.d_min, spec.d_max) for _ in range(spec.n)]
    if name is None:
        name = f"uniform-n{spec.n}-seed{spec.seed}"
    jobs = tuple(Job(id=i + 1, p=ps[i], d=ds[i]) for i in range(spec.n))
    return Instance(name=name, jobs=jobs)


def generate_suite(count: int, spec: GenSpec) -> list[Instance]:
    """Generate ``count`` instances named problem-1 .. problem-count.

    Instance k uses the derived seed ``derive_seed(spec.seed, k)`` so the
    whole suite is a pure function of (count, spec).
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    suite = []
    for k in range(1, count + 1):
        sub = replace(spec, seed=derive_seed(spec.seed, k))
        suite.append(generate_instance(sub, name=f"problem-{k}"))
    return suite
