"""Planner wall-time scaling study over graph size and k.

Generates seed-deterministic random planar road networks, plans one
far-apart route per (size, k) cell, and reports per-plan wall times.
The default grid is sized for a quick local run; --full switches to the
metropolitan setting (12,000 nodes / 30,000 directed edges, k up to
1,000) used by the scalability acceptance check.

Usage:
    python scripts/run_benchmarks.py [--full] [--reps N] [--csv out.csv]
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time
from math import inf

from covroute.constraints import Requirements
from covroute.planner import PlannerConfig, plan
from covroute.randgraph import far_apart_pair, random_planar_graph

QUICK_SIZES = [(1_000, 2_500), (4_000, 10_000)]
FULL_SIZES = [(1_000, 2_500), (4_000, 10_000), (12_000, 30_000)]
QUICK_KS = [1, 10, 100]
FULL_KS = [1, 10, 100, 1_000]


def time_cell(nodes: int, edges: int, k: int, reps: int, seed: int) -> dict[str, float]:
    g = random_planar_graph(nodes, edges, seed)
    s, t = far_apart_pair(g)
    config = PlannerConfig(alpha=1.0, requirements=Requirements(d1_s=inf, d2_s=inf), k=k)
    plan(g, s, t, config)  # warmup: first call pays one-time indexing
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        result = plan(g, s, t, config)
        times.append(time.perf_counter() - t0)
    assert result.status != "unreachable"
    return {
        "mean_s": statistics.fmean(times),
        "min_s": min(times),
        "max_s": max(times),
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--full", action="store_true", help="run the metropolitan-scale grid")
    parser.add_argument("--reps", type=int, default=5, help="plans per cell (default 5)")
    parser.add_argument("--seed", type=int, default=7, help="graph generator seed")
    parser.add_argument("--csv", help="also write rows to this CSV file")
    args = parser.parse_args()

    sizes = FULL_SIZES if args.full else QUICK_SIZES
    ks = FULL_KS if args.full else QUICK_KS
    rows: list[dict[str, float | int]] = []
    print(f"{'nodes':>8} {'edges':>8} {'k':>6} {'mean_s':>10} {'min_s':>10} {'max_s':>10}")
    for nodes, edges in sizes:
        for k in ks:
            cell = time_cell(nodes, edges, k, args.reps, args.seed)
            row: dict[str, float | int] = {"nodes": nodes, "edges": edges, "k": k, **cell}
            rows.append(row)
            print(
                f"{nodes:>8} {edges:>8} {k:>6} {cell['mean_s']:>10.4f} "
                f"{cell['min_s']:>10.4f} {cell['max_s']:>10.4f}"
            )
            sys.stdout.flush()

    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
        print(f"rows written to {args.csv}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
