#!/usr/bin/env python3
"""Run the full parameter-grid experiment on a generated instance suite.

Generates a suite of uniform random 10-job instances, sweeps the default
grid (2 convergence thresholds x 4 population sizes x 3 mutation rates)
with several seeds per cell, and writes records.csv plus the Markdown
grid report.  With default budgets the full run takes a long time because
the high-mutation cells only stop on the stall or time limit; use --quick
for a small smoke-scale version of the same experiment.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from smtt.generator import GenSpec, generate_suite
from smtt.harness import SweepSpec, aggregate, render_grid_markdown, run_sweep, write_records_csv


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("grid-results"),
                        help="output directory (default: grid-results)")
    parser.add_argument("--seed", type=int, default=0,
                        help="master seed for the suite and all runs (default: 0)")
    parser.add_argument("--instances", type=int, default=20,
                        help="suite size (default: 20)")
    parser.add_argument("--seeds-per-cell", type=int, default=5,
                        help="replicates per grid cell and instance (default: 5)")
    parser.add_argument("--time-limit", type=float, default=45.0,
                        help="wall-clock budget per run in seconds (default: 45, inf allowed)")
    parser.add_argument("--stall", type=float, default=None,
                        help="seconds without improvement before a run stops (default: solver default)")
    parser.add_argument("--workers", type=int, default=1,
                        help="concurrent solver processes; timings are only comparable at 1")
    parser.add_argument("--quick", action="store_true",
                        help="small version: 5 instances, 2 seeds/cell, tight budgets")
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    if args.quick:
        args.instances = 5
        args.seeds_per_cell = 2
        args.time_limit = 2.0
        args.stall = 0.5

    suite = generate_suite(args.instances, GenSpec(seed=args.seed))
    spec = SweepSpec(
        instances=suite,
        seeds_per_cell=args.seeds_per_cell,
        time_limit=args.time_limit,
        max_stall=args.stall,
        seed=args.seed,
    )
    print(f"{len(suite)} instances, {spec.record_count} runs "
          f"({len(spec.convergences)}x{len(spec.populations)}x{len(spec.mutation_rates)} cells "
          f"x {args.seeds_per_cell} seeds)")

    started = time.perf_counter()
    records = run_sweep(spec, workers=args.workers)
    elapsed = time.perf_counter() - started

    args.out.mkdir(parents=True, exist_ok=True)
    csv_path = args.out / "records.csv"
    report_path = args.out / "report.md"
    write_records_csv(records, csv_path)
    report_path.write_text(render_grid_markdown(records), encoding="utf-8")

    summary = aggregate(records)
    print(f"finished in {elapsed:.1f}s, overall hit-rate {summary.overall_hit_rate:.3f}")
    for cell in summary.cell_order:
        conv, pop, mut = cell
        stats = summary.per_cell[cell]
        med = "NA" if stats.median_time_to_best is None else f"{stats.median_time_to_best:.3f}s"
        print(f"  conv={conv:g} pop={pop} mut={mut:g}: "
              f"hit-rate {stats.hit_rate:.2f}, median time-to-best {med}")
    print(csv_path)
    print(report_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
