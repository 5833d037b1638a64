"""Command-line front end: gen, solve, oracle, sweep, report, verify.

Exit codes: 0 success, 1 data error (bad file, invalid bounds, failed
check), 2 usage error, 3 internal failure (consistency violations and
unexpected exceptions).
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click

from . import harness
from .core import PAPER_P1, edd_sequence, resolve_instance, save_instance, total_tardiness
from .evolver import EaParams, solve
from .generator import GenSpec, derive_seed, generate_instance, generate_suite
from .oracle import brute_force, subset_dp


class DataError(click.ClickException):
    exit_code = 1


def _load(ref: str):
    try:
        return resolve_instance(ref)
    except FileNotFoundError:
        raise DataError(f"instance file not found: {ref}")
    except ValueError as exc:
        raise DataError(str(exc))


@click.group()
def cli() -> None:
    """Single-machine total-tardiness toolkit: generate instances, solve them
    with the evolutionary solver, check against exact oracles, and run
    parameter sweeps."""


@cli.command("gen")
@click.option("--n", default=10, show_default=True, help="Jobs per instance.")
@click.option("--p-min", default=10, show_default=True, help="Minimum processing time.")
@click.option("--p-max", default=20, show_default=True, help="Maximum processing time.")
@click.option("--d-min", default=50, show_default=True, help="Minimum due date.")
@click.option("--d-max", default=150, show_default=True, help="Maximum due date.")
@click.option("--seed", default=0, show_default=True, help="Master seed for the suite.")
@click.option("--count", default=1, show_default=True, help="Number of instances.")
@click.option(
    "--out",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("."),
    show_default=True,
    help="Output directory.",
)
def cmd_gen(n: int, p_min: int, p_max: int, d_min: int, d_max: int, seed: int, count: int, out: Path) -> None:
    """Generate random instances as problem-K.json files."""
    try:
        spec = GenSpec(n=n, p_min=p_min, p_max=p_max, d_min=d_min, d_max=d_max, seed=seed)
        suite = generate_suite(count, spec)
    except ValueError as exc:
        raise DataError(str(exc))
    out.mkdir(parents=True, exist_ok=True)
    for inst in suite:
        path = out / f"{inst.name}.json"
        save_instance(inst, path)
        click.echo(str(path))


@cli.command("solve")
@click.argument("instance_ref")
@click.option("--pop", default=100, show_default=True, help="Population size.")
@click.option("--mut", default=0.075, show_default=True, help="Mutation rate.")
@click.option("--conv", default=0.0001, show_default=True, help="Convergence threshold.")
@click.option("--seed", default=None, type=int, help="RNG seed (omit for a fresh one).")
@click.option(
    "--stall",
    default=30.0,
    show_default=True,
    envvar="SMTT_MAX_STALL",
    help="Seconds without improvement before stopping ('inf' to disable).",
)
@click.option(
    "--time-limit",
    default=45.0,
    show_default=True,
    envvar="SMTT_TIME_LIMIT",
    help="Total wall-clock budget in seconds ('inf' to disable).",
)
@click.option("--gens", default=None, type=int, help="Generation cap (for deterministic runs).")
def cmd_solve(instance_ref: str, pop: int, mut: float, conv: float, seed: int | None,
              stall: float, time_limit: float, gens: int | None) -> None:
    """Run the evolutionary solver on an instance file (or builtin name)."""
    instance = _load(instance_ref)
    try:
        params = EaParams(
            population_size=pop,
            mutation_rate=mut,
            convergence=conv,
            seed=seed,
            max_stall=stall,
            time_limit=time_limit,
            max_generations=gens,
        )
    except ValueError as exc:
        raise DataError(str(exc))
    result = solve(instance, params)
    click.echo(json.dumps(result.to_dict(), indent=2))


@cli.command("oracle")
@click.argument("instance_ref")
@click.option(
    "--method",
    type=click.Choice(["dp", "brute"]),
    default="dp",
    show_default=True,
    help="subset DP or full enumeration.",
)
def cmd_oracle(instance_ref: str, method: str) -> None:
    """Compute the exact optimum of an instance."""
    instance = _load(instance_ref)
    solver = subset_dp if method == "dp" else brute_force
    try:
        result = solver(instance)
    except ValueError as exc:
        raise DataError(str(exc))
    click.echo(json.dumps(result.to_dict(), indent=2))


@cli.command("sweep")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option(
    "--out",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("."),
    show_default=True,
    help="Directory for records.csv and report.md.",
)
@click.option("--workers", default=1, show_default=True, help="Concurrent solver processes.")
def cmd_sweep(spec_file: Path, out: Path, workers: int) -> None:
    """Run the parameter sweep described by a JSON spec file."""
    try:
        spec = harness.load_sweep_spec(spec_file)
    except (ValueError, FileNotFoundError) as exc:
        raise DataError(str(exc))
    records = harness.run_sweep(spec, workers=workers)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "records.csv"
    report_path = out / "report.md"
    harness.write_records_csv(records, csv_path)
    report_path.write_text(harness.render_grid_markdown(records), encoding="utf-8")
    summary = harness.aggregate(records)
    click.echo(f"{len(records)} records, overall hit-rate {summary.overall_hit_rate:.3f}")
    click.echo(str(csv_path))
    click.echo(str(report_path))


@cli.command("report")
@click.argument("records_csv", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the Markdown grid here instead of stdout.")
def cmd_report(records_csv: Path, out: Path | None) -> None:
    """Render the Markdown grid report from a sweep records CSV."""
    try:
        records = harness.read_records_csv(records_csv)
        text = harness.render_grid_markdown(records)
    except ValueError as exc:
        raise DataError(str(exc))
    if out is None:
        click.echo(text, nl=False)
    else:
        out.write_text(text, encoding="utf-8")
        click.echo(str(out))


def _verify_checks(quick: bool):
    """Yield (name, callable) pairs; each callable returns True on pass."""
    reference_best = [3, 9, 2, 1, 7, 8, 5, 10, 6, 4]

    def check_reference_instance() -> bool:
        dp = subset_dp(PAPER_P1)
        ok = dp.optimum == 23 and total_tardiness(PAPER_P1, reference_best) == 23
        if not quick:
            ok = ok and brute_force(PAPER_P1).optimum == 23
        return ok

    def check_cross_oracle() -> bool:
        count, n = (8, 7) if quick else (50, 9)
        for k in range(count):
            inst = generate_instance(GenSpec(n=n, seed=derive_seed(1001, k)))
            if brute_force(inst).optimum != subset_dp(inst).optimum:
                return False
        return True

    def check_edd_zero() -> bool:
        count = 50 if quick else 200
        for k in range(count):
            inst = generate_instance(GenSpec(n=10, seed=derive_seed(2002, k)))
            if subset_dp(inst).optimum == 0 and total_tardiness(inst, edd_sequence(inst)) != 0:
                return False
        return True

    def check_seed_determinism() -> bool:
        params = EaParams(
            population_size=20,
            seed=11,
            max_stall=math.inf,
            time_limit=math.inf,
            max_generations=40,
        )
        a = solve(PAPER_P1, params)
        b = solve(PAPER_P1, params)
        return (a.best, a.best_value, a.generations, a.stop_reason) == (
            b.best,
            b.best_value,
            b.generations,
            b.stop_reason,
        )

    def check_suite_determinism() -> bool:
        spec = GenSpec(seed=7)
        first = generate_suite(5, spec)
        second = generate_suite(5, spec)
        return [i.to_dict() for i in first] == [i.to_dict() for i in second]

    n_label = "8 random n=7" if quick else "50 random n=9"
    edd_label = "50" if quick else "200"
    return [
        ("paper-p1 optimum = 23", check_reference_instance),
        (f"dp vs brute on {n_label}", check_cross_oracle),
        (f"EDD zero-tardiness on {edd_label} random n=10", check_edd_zero),
        ("seed determinism", check_seed_determinism),
        ("suite determinism", check_suite_determinism),
    ]


@cli.command("verify")
@click.option("--quick", is_flag=True, help="Smaller sample sizes, skips the slow enumeration.")
def cmd_verify(quick: bool) -> None:
    """Run the built-in self-checks and report PASS/FAIL per check."""
    failures = 0
    for name, check in _verify_checks(quick):
        ok = check()
        click.echo(f"{name}: {'PASS' if ok else 'FAIL'}")
        if not ok:
            failures += 1
    if failures:
        raise DataError(f"{failures} check(s) failed")


def main() -> None:
    try:
        cli.main(standalone_mode=True)
    except Exception as exc:  # internal failure: distinct exit class
        click.echo(f"internal error: {exc}", err=True)
        sys.exit(3)


if __name__ == "__main__":
    main()
