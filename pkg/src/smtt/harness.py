"""Parameter-sweep benchmark harness.

Runs the evolutionary solver over a grid of (convergence, population size,
mutation rate) cells crossed with a set of instances and replicate seeds,
classifies every run against known optima (supplied or computed by the
subset DP oracle), and renders the results as a CSV record table plus a
Markdown grid whose rows are parameter cells and whose columns are
problems, each cell holding the median time-to-best of the optimum-hitting
runs or NA.

Seed derivation: record seeds are ``derive_seed(spec.seed, cell_index,
instance_index, replicate)`` where cell_index is the flat index of the
(convergence, population, mutation) nested loops in spec order,
instance_index is the position in ``spec.instances`` and replicate runs
0..seeds_per_cell-1.  Record order is exactly that nested-loop order, so
output files are deterministic.
"""

from __future__ import annotations

import csv
import json
import statistics
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .core import BUILTIN_INSTANCES, Instance, resolve_instance
from .evolver import EaParams, solve
from .generator import derive_seed
from .oracle import SUBSET_DP_MAX_N, subset_dp

DEFAULT_POPULATIONS = [100, 50, 25, 10]
DEFAULT_MUTATION_RATES = [0.75, 0.075, 0.0075]
DEFAULT_CONVERGENCES = [0.0001, 0.1]

CSV_HEADER = [
    "instance",
    "convergence",
    "population",
    "mutation",
    "seed",
    "best",
    "time_to_best",
    "wall_time",
    "stop_reason",
    "status",
]


class ConsistencyError(RuntimeError):
    """A run beat its supposed optimum: the oracle or the evaluator is broken."""


@dataclass
class SweepSpec:
    """Grid definition for one sweep.

    ``max_stall``/``max_generations`` default to the solver defaults when
    None; ``known_optima`` maps instance names to optima and overrides the
    oracle (a disagreement between the two is reported as a warning).
    """

    instances: list[Instance]
    populations: list[int] = field(default_factory=lambda: list(DEFAULT_POPULATIONS))
    mutation_rates: list[float] = field(default_factory=lambda: list(DEFAULT_MUTATION_RATES))
    convergences: list[float] = field(default_factory=lambda: list(DEFAULT_CONVERGENCES))
    seeds_per_cell: int = 5
    time_limit: float = 45.0
    max_stall: float | None = None
    max_generations: int | None = None
    seed: int = 0
    known_optima: dict[str, int] | None = None

    def __post_init__(self) -> None:
        for name, values in (
            ("instances", self.instances),
            ("populations", self.populations),
            ("mutation_rates", self.mutation_rates),
            ("convergences", self.convergences),
        ):
            if not values:
                raise ValueError(f"{name} must be non-empty")
        if self.seeds_per_cell < 1:
            raise ValueError(f"seeds_per_cell must be >= 1, got {self.seeds_per_cell}")

    @property
    def record_count(self) -> int:
        return (
            len(self.convergences)
            * len(self.populations)
            * len(self.mutation_rates)
            * len(self.instances)
            * self.seeds_per_cell
        )


@dataclass(frozen=True)
class RunRecord:
    instance_name: str
    convergence: float
    population_size: int
    mutation_rate: float
    seed: int
    best_value: int
    time_to_best: float
    wall_time: float
    stop_reason: str
    status: str  # "OPT" | "NA" | "UNKNOWN"


def classify(best_value: int, optimum: int) -> str:
    """OPT when the run matched the optimum, NA when it fell short.

    A best value below the optimum is impossible with a correct oracle and
    evaluator, so it aborts the sweep.
    """
    if best_value < optimum:
        raise ConsistencyError(
            f"run best {best_value} is below the supposed optimum {optimum}; "
            "the oracle or the evaluator is defective"
        )
    return "OPT" if best_value == optimum else "NA"


def resolve_known_optima(spec: SweepSpec) -> dict[str, int | None]:
    """Optimum per instance name: supplied values win, the DP oracle fills gaps.

    Warns when a supplied value disagrees with the oracle and when an
    instance is too large for the oracle and has no supplied value (its
    records will come out UNKNOWN).
    """
    supplied = spec.known_optima or {}
    out: dict[str, int | None] = {}
    for inst in spec.instances:
        computed = subset_dp(inst).optimum if inst.n <= SUBSET_DP_MAX_N else None
        given = supplied.get(inst.name)
        if given is not None:
            if computed is not None and given != computed:
                warnings.warn(
                    f"instance {inst.name!r}: supplied optimum {given} disagrees with "
                    f"the DP oracle value {computed}; using the supplied value",
                    RuntimeWarning,
                    stacklevel=2,
                )
            out[inst.name] = given
        elif computed is not None:
            out[inst.name] = computed
        else:
            warnings.warn(
                f"instance {inst.name!r}: {inst.n} jobs exceeds the oracle bound and no "
                "optimum was supplied; its records will be marked UNKNOWN",
                RuntimeWarning,
                stacklevel=2,
            )
            out[inst.name] = None
    return out


def _cell_grid(spec: SweepSpec) -> list[tuple[int, float, int, float]]:
    """Flat (cell_index, convergence, population, mutation) list in spec order."""
    cells = []
    index = 0
    for conv in spec.convergences:
        for pop in spec.populations:
            for mut in spec.mutation_rates:
                cells.append((index, conv, pop, mut))
                index += 1
    return cells


def _run_one(task: tuple) -> RunRecord:
    instance, conv, pop, mut, seed, time_limit, max_stall, max_generations, optimum = task
    params_kwargs = dict(
        population_size=pop,
        mutation_rate=mut,
        convergence=conv,
        seed=seed,
        time_limit=time_limit,
        max_generations=max_generations,
    )
    if max_stall is not None:
        params_kwargs["max_stall"] = max_stall
    result = solve(instance, EaParams(**params_kwargs))
    status = classify(result.best_value, optimum) if optimum is not None else "UNKNOWN"
    return RunRecord(
        instance_name=instance.name,
        convergence=conv,
        population_size=pop,
        mutation_rate=mut,
        seed=seed,
        best_value=result.best_value,
        time_to_best=result.time_to_best,
        wall_time=result.wall_time,
        stop_reason=result.stop_reason,
        status=status,
    )


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[RunRecord]:
    """Run every (cell, instance, replicate) combination; deterministic order.

    ``workers > 1`` fans the independent runs out over processes; results
    are reassembled in grid order either way.  Timing-sensitive sweeps
    should keep workers at 1 so runs do not interfere.
    """
    optima = resolve_known_optima(spec)
    tasks = []
    for cell_index, conv, pop, mut in _cell_grid(spec):
        for inst_index, inst in enumerate(spec.instances):
            for replicate in range(spec.seeds_per_cell):
                seed = derive_seed(spec.seed, cell_index, inst_index, replicate)
                tasks.append(
                    (
                        inst,
                        conv,
                        pop,
                        mut,
                        seed,
                        spec.time_limit,
                        spec.max_stall,
                        spec.max_generations,
                        optima[inst.name],
                    )
                )
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_one, tasks, chunksize=1))
    else:
        records = [_run_one(task) for task in tasks]
    return records


@dataclass(frozen=True)
class CellStats:
    """Aggregate over the runs of one grid cell (optionally one instance)."""

    runs: int
    hits: int
    median_time_to_best: float | None  # over OPT runs; None when no run hit

    @property
    def hit_rate(self) -> float:
        return self.hits / self.runs


@dataclass
class SweepSummary:
    cell_order: list[tuple[float, int, float]]
    instance_order: list[str]
    per_cell: dict[tuple[float, int, float], CellStats]
    per_cell_instance: dict[tuple[float, int, float, str], CellStats]

    @property
    def overall_hit_rate(self) -> float:
        total = sum(s.runs for s in self.per_cell.values())
        hits = sum(s.hits for s in self.per_cell.values())
        return hits / total if total else 0.0


def _stats(records: list[RunRecord]) -> CellStats:
    hit_times = [r.time_to_best for r in records if r.status == "OPT"]
    return CellStats(
        runs=len(records),
        hits=len(hit_times),
        median_time_to_best=statistics.median(hit_times) if hit_times else None,
    )


def aggregate(records: list[RunRecord]) -> SweepSummary:
    """Per-cell and per-cell-per-instance hit rates and median times-to-best."""
    if not records:
        raise ValueError("no records to aggregate")
    cell_order: list[tuple[float, int, float]] = []
    instance_order: list[str] = []
    by_cell: dict[tuple[float, int, float], list[RunRecord]] = {}
    by_cell_instance: dict[tuple[float, int, float, str], list[RunRecord]] = {}
    for r in records:
        cell = (r.convergence, r.population_size, r.mutation_rate)
        if cell not in by_cell:
            by_cell[cell] = []
            cell_order.append(cell)
        if r.instance_name not in instance_order:
            instance_order.append(r.instance_name)
        by_cell[cell].append(r)
        by_cell_instance.setdefault(cell + (r.instance_name,), []).append(r)
    return SweepSummary(
        cell_order=cell_order,
        instance_order=instance_order,
        per_cell={cell: _stats(rs) for cell, rs in by_cell.items()},
        per_cell_instance={key: _stats(rs) for key, rs in by_cell_instance.items()},
    )


def _format_param(x: float) -> str:
    return f"{x:g}"


def render_grid_markdown(records: list[RunRecord]) -> str:
    """Markdown grid: parameter cells as rows, problems as columns.

    Cells show the median time-to-best (seconds) of the runs that hit the
    optimum, or NA when none did.  A closing row lists each problem's
    optimum where known (taken from the OPT records), and a summary table
    lists per-cell hit rates.
    """
    summary = aggregate(records)
    optimum_by_instance: dict[str, int] = {
        r.instance_name: r.best_value for r in records if r.status == "OPT"
    }

    lines = ["# Sweep grid", ""]
    header = ["convergence", "population", "mutation"] + summary.instance_order
    lines.append("| " + " | ".join(header) + " |")
    lines.append("|" + "---|" * len(header))
    for cell in summary.cell_order:
        conv, pop, mut = cell
        row = [_format_param(conv), str(pop), _format_param(mut)]
        for name in summary.instance_order:
            stats = summary.per_cell_instance.get(cell + (name,))
            if stats is None or stats.median_time_to_best is None:
                row.append("NA")
            else:
                row.append(f"{stats.median_time_to_best:.2f}")
        lines.append("| " + " | ".join(row) + " |")
    optimum_row = ["optimum", "", ""]
    for name in summary.instance_order:
        value = optimum_by_instance.get(name)
        optimum_row.append("?" if value is None else str(value))
    lines.append("| " + " | ".join(optimum_row) + " |")

    lines += ["", "## Per-cell hit rates", ""]
    lines.append("| convergence | population | mutation | runs | hit rate | median time (s) |")
    lines.append("|---|---|---|---|---|---|")
    for cell in summary.cell_order:
        conv, pop, mut = cell
        stats = summary.per_cell[cell]
        med = "NA" if stats.median_time_to_best is None else f"{stats.median_time_to_best:.2f}"
        lines.append(
            f"| {_format_param(conv)} | {pop} | {_format_param(mut)} "
            f"| {stats.runs} | {stats.hit_rate:.2f} | {med} |"
        )
    return "\n".join(lines) + "\n"


def write_records_csv(records: list[RunRecord], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(
                [
                    r.instance_name,
                    _format_param(r.convergence),
                    r.population_size,
                    _format_param(r.mutation_rate),
                    r.seed,
                    r.best_value,
                    f"{r.time_to_best:.6f}",
                    f"{r.wall_time:.6f}",
                    r.stop_reason,
                    r.status,
                ]
            )


def read_records_csv(path: str | Path) -> list[RunRecord]:
    records = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER:
            raise ValueError(f"{path}: unexpected CSV header {reader.fieldnames}")
        for row in reader:
            records.append(
                RunRecord(
                    instance_name=row["instance"],
                    convergence=float(row["convergence"]),
                    population_size=int(row["population"]),
                    mutation_rate=float(row["mutation"]),
                    seed=int(row["seed"]),
                    best_value=int(row["best"]),
                    time_to_best=float(row["time_to_best"]),
                    wall_time=float(row["wall_time"]),
                    stop_reason=row["stop_reason"],
                    status=row["status"],
                )
            )
    return records


def _parse_budget(value, default: float) -> float:
    """Budget fields accept numbers, the string "inf", or null for the default."""
    return default if value is None else float(value)


def load_sweep_spec(path: str | Path) -> SweepSpec:
    """Read a sweep spec from JSON; instance paths resolve relative to the file.

    Fields: instances (list of file paths or builtin names, required),
    populations, mutation_rates, convergences, seeds_per_cell, time_limit,
    max_stall, max_generations, seed, known_optima (inline map or path to a
    JSON map).  Missing fields take the documented defaults.  All instance
    files are checked before anything runs.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ValueError(f"{path}: sweep spec must be a JSON object")
    if "instances" not in data or not data["instances"]:
        raise ValueError(f"{path}: sweep spec must list at least one instance")

    base = path.parent
    instances = []
    for ref in data["instances"]:
        ref = str(ref)
        candidate = base / ref
        # relative paths resolve against the spec file; otherwise the
        # reference may be a builtin name, which resolve_instance handles
        if candidate.exists():
            instances.append(resolve_instance(candidate))
        elif ref in BUILTIN_INSTANCES or Path(ref).exists():
            instances.append(resolve_instance(ref))
        else:
            raise ValueError(f"{path}: instance reference {ref!r} is neither a file nor a builtin name")

    known = data.get("known_optima")
    if isinstance(known, str):
        optima_path = base / known if not Path(known).is_absolute() else Path(known)
        known = json.loads(Path(optima_path).read_text(encoding="utf-8"))
    if known is not None:
        known = {str(k): int(v) for k, v in known.items()}

    max_stall = data.get("max_stall")
    if max_stall is not None:
        max_stall = float(max_stall)

    return SweepSpec(
        instances=instances,
        populations=[int(x) for x in data.get("populations", DEFAULT_POPULATIONS)],
        mutation_rates=[float(x) for x in data.get("mutation_rates", DEFAULT_MUTATION_RATES)],
        convergences=[float(x) for x in data.get("convergences", DEFAULT_CONVERGENCES)],
        seeds_per_cell=int(data.get("seeds_per_cell", 5)),
        time_limit=_parse_budget(data.get("time_limit"), 45.0),
        max_stall=max_stall,
        max_generations=(None if data.get("max_generations") is None else int(data["max_generations"])),
        seed=int(data.get("seed", 0)),
        known_optima=known,
    )
