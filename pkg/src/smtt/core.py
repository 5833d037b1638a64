"""Instance data model and exact evaluation for single-machine total tardiness.

A problem instance is a set of jobs, each with an integer processing time and
an integer due date.  A schedule is a permutation of the job ids; jobs run
back to back on one machine with no idle time and no preemption.  A job's
tardiness is the amount by which its completion time exceeds its due date,
clipped at zero, and the objective is the sum of tardiness over all jobs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

# A sequence is a plain list of job ids; position k holds the id of the k-th
# job processed.  Valid sequences are permutations of 1..n.
Sequence = list[int]


@dataclass(frozen=True)
class Job:
    """One job: 1-based id, processing time and due date in integer time units."""

    id: int
    p: int
    d: int

    def __post_init__(self) -> None:
        if self.id < 1:
            raise ValueError(f"job id must be >= 1, got {self.id}")
        if self.p < 0:
            raise ValueError(f"job {self.id}: processing time must be >= 0, got {self.p}")
        if self.d < 0:
            raise ValueError(f"job {self.id}: due date must be >= 0, got {self.d}")


@dataclass(frozen=True)
class Instance:
    """A named set of jobs whose ids are exactly 1..n."""

    name: str
    jobs: tuple[Job, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if not self.jobs:
            raise ValueError("instance must contain at least one job")
        seen: set[int] = set()
        for job in self.jobs:
            if job.id in seen:
                raise ValueError(f"duplicate job id {job.id} in instance {self.name!r}")
            seen.add(job.id)
        n = len(self.jobs)
        missing = set(range(1, n + 1)) - seen
        if missing:
            raise ValueError(
                f"instance {self.name!r}: job ids must be exactly 1..{n}, "
                f"missing id {min(missing)}"
            )

    @property
    def n(self) -> int:
        return len(self.jobs)

    def processing_by_id(self) -> list[int]:
        """Processing times indexed by job id (index 0 unused)."""
        out = [0] * (self.n + 1)
        for job in self.jobs:
            out[job.id] = job.p
        return out

    def due_by_id(self) -> list[int]:
        """Due dates indexed by job id (index 0 unused)."""
        out = [0] * (self.n + 1)
        for job in self.jobs:
            out[job.id] = job.d
        return out

    def total_processing(self) -> int:
        return sum(job.p for job in self.jobs)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "jobs": [{"id": j.id, "p": j.p, "d": j.d} for j in self.jobs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        if not isinstance(data, dict):
            raise ValueError("instance document must be a JSON object")
        for field in ("name", "jobs"):
            if field not in data:
                raise ValueError(f"instance document missing field {field!r}")
        jobs = []
        for k, entry in enumerate(data["jobs"]):
            for field in ("id", "p", "d"):
                if field not in entry:
                    raise ValueError(f"jobs[{k}] missing field {field!r}")
                if not isinstance(entry[field], int) or isinstance(entry[field], bool):
                    raise ValueError(f"jobs[{k}].{field} must be an integer, got {entry[field]!r}")
            jobs.append(Job(id=entry["id"], p=entry["p"], d=entry["d"]))
        return cls(name=str(data["name"]), jobs=tuple(jobs))


@dataclass(frozen=True)
class Evaluation:
    """Schedule evaluation, aligned with sequence positions (not job ids)."""

    completion: tuple[int, ...]
    tardiness: tuple[int, ...]
    total: int


def check_sequence(instance: Instance, seq: Sequence) -> None:
    """Reject anything that is not a permutation of the instance's job ids."""
    n = instance.n
    seen: set[int] = set()
    for jid in seq:
        if not isinstance(jid, int) or isinstance(jid, bool) or not 1 <= jid <= n:
            raise ValueError(f"sequence contains unknown job id {jid!r} (valid ids are 1..{n})")
        if jid in seen:
            raise ValueError(f"sequence contains duplicate job id {jid}")
        seen.add(jid)
    if len(seq) != n:
        missing = sorted(set(range(1, n + 1)) - seen)
        if missing:
            raise ValueError(f"sequence is missing job id {missing[0]} (length {len(seq)}, expected {n})")
        raise ValueError(f"sequence has length {len(seq)}, expected {n}")


def evaluate(instance: Instance, seq: Sequence) -> Evaluation:
    """Compute completion times, per-job tardiness, and total tardiness.

    Completion times accumulate processing times in sequence order starting
    from time zero.  Tardiness at position k is max(0, completion - due date)
    for the job scheduled there.
    """
    check_sequence(instance, seq)
    p_by = instance.processing_by_id()
    d_by = instance.due_by_id()
    completion: list[int] = []
    tardiness: list[int] = []
    clock = 0
    total = 0
    for jid in seq:
        clock += p_by[jid]
        late = clock - d_by[jid]
        late = late if late > 0 else 0
        completion.append(clock)
        tardiness.append(late)
        total += late
    return Evaluation(tuple(completion), tuple(tardiness), total)


def total_tardiness(instance: Instance, seq: Sequence) -> int:
    """Total tardiness of the given sequence; shorthand for evaluate(...).total."""
    return evaluate(instance, seq).total


def edd_sequence(instance: Instance) -> Sequence:
    """Earliest-due-date order: ascending due date, ties broken by ascending id."""
    due = instance.due_by_id()
    return sorted(range(1, instance.n + 1), key=lambda jid: (due[jid], jid))


def load_instance(path: str | Path) -> Instance:
    """Read an instance from a JSON file ({"name": ..., "jobs": [{id,p,d}, ...]})."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    try:
        return Instance.from_dict(data)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def save_instance(instance: Instance, path: str | Path) -> None:
    """Write an instance as JSON with a stable layout (byte-deterministic)."""
    Path(path).write_text(json.dumps(instance.to_dict(), indent=2) + "\n", encoding="utf-8")


# Bundled ten-job reference instance; the one instance whose data and optimum
# (total tardiness 23) are known exactly, used by `smtt verify` and the tests.
PAPER_P1 = Instance(
    name="paper-p1",
    jobs=tuple(
        Job(id=i + 1, p=p, d=d)
        for i, (p, d) in enumerate(
            zip(
                [11, 19, 14, 10, 20, 19, 19, 16, 11, 14],
                [57, 58, 85, 148, 100, 135, 75, 94, 73, 125],
            )
        )
    ),
)

BUILTIN_INSTANCES = {PAPER_P1.name: PAPER_P1}


def resolve_instance(ref: str | Path) -> Instance:
    """Resolve an instance reference: a builtin name (e.g. "paper-p1") or a file path."""
    if str(ref) in BUILTIN_INSTANCES:
        return BUILTIN_INSTANCES[str(ref)]
    return load_instance(ref)
