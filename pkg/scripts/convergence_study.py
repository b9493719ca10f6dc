"""Iteration counts and timings of the Benders engine on a generated corpus.

For every instance the robust optimum is cross-checked against brute force,
and the number of iterations is compared with the size of the feasible set.

    python3 scripts/convergence_study.py --per-kind 100 --csv study.csv
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time

from regret_benders import benders_solve, enumerate_feasible
from regret_benders.generate import KINDS, desk_params, generate_instance
from regret_benders.validation import brute_force_robust

FIELDS = ["kind", "seed", "n", "omega", "master", "iterations", "ratio", "robust_cost", "agrees", "seconds"]


def study(kinds, per_kind: int, base_seed: int, masters):
    for kind in kinds:
        for k in range(per_kind):
            seed = base_seed + k
            inst = generate_instance(kind, seed, desk_params(kind, k))
            omega = sum(1 for _ in enumerate_feasible(inst.problem))
            _, r_star = brute_force_robust(inst.problem, inst.intervals)
            for master in masters:
                start = time.perf_counter()
                res = benders_solve(inst.problem, inst.intervals, master)
                elapsed = time.perf_counter() - start
                yield {
                    "kind": kind,
                    "seed": seed,
                    "n": inst.n,
                    "omega": omega,
                    "master": master,
                    "iterations": res.num_iterations,
                    "ratio": res.num_iterations / omega,
                    "robust_cost": res.robust_cost,
                    "agrees": res.robust_cost == r_star,
                    "seconds": elapsed,
                }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kinds", nargs="+", choices=KINDS, default=list(KINDS))
    ap.add_argument("--per-kind", type=int, default=50)
    ap.add_argument("--base-seed", type=int, default=1000)
    ap.add_argument("--masters", nargs="+", choices=["enum", "bnb"], default=["enum", "bnb"])
    ap.add_argument("--csv", help="also write one row per run to this file")
    args = ap.parse_args(argv)

    rows = list(study(args.kinds, args.per_kind, args.base_seed, args.masters))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, FIELDS)
            writer.writeheader()
            writer.writerows(rows)

    print(f"{'kind':<14}{'master':<7}{'runs':>5}{'mean it':>9}{'max it':>8}{'mean ratio':>12}{'max ratio':>11}{'time s':>9}")
    for kind in args.kinds:
        for master in args.masters:
            sel = [r for r in rows if r["kind"] == kind and r["master"] == master]
            print(
                f"{kind:<14}{master:<7}{len(sel):>5}"
                f"{statistics.mean(r['iterations'] for r in sel):>9.2f}"
                f"{max(r['iterations'] for r in sel):>8}"
                f"{statistics.mean(r['ratio'] for r in sel):>12.3f}"
                f"{max(r['ratio'] for r in sel):>11.3f}"
                f"{sum(r['seconds'] for r in sel):>9.2f}"
            )
    disagreements = [r for r in rows if not r["agrees"]]
    if disagreements:
        print(f"{len(disagreements)} runs disagree with brute force", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
