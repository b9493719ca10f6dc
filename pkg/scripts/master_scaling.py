"""Wall time of the two master solvers as tabular instances grow.

The enumeration master scans the whole feasible set every iteration; the
branch-and-bound master prunes with the cut bounds. This prints both for
increasing feasible-set sizes.

    python3 scripts/master_scaling.py --sizes 64 256 1024 4096
"""

from __future__ import annotations

import argparse
import sys
import time

from regret_benders import benders_solve
from regret_benders.generate import GeneratorParams, generate_instance


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", nargs="+", type=int, default=[64, 256, 1024])
    ap.add_argument("--n", type=int, default=16)
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args(argv)

    print(f"{'|feasible set|':>15}{'seed':>6}{'iterations':>12}{'enum s':>10}{'bnb s':>10}")
    for size in args.sizes:
        for seed in range(args.seeds):
            inst = generate_instance("tabular", seed, GeneratorParams(n=args.n, num_solutions=size))
            times = {}
            costs = set()
            for master in ("enum", "bnb"):
                start = time.perf_counter()
                res = benders_solve(inst.problem, inst.intervals, master)
                times[master] = time.perf_counter() - start
                costs.add((res.robust_cost, res.robust_solution))
            if len(costs) != 1:
                print(f"masters disagree at size={size} seed={seed}", file=sys.stderr)
                return 1
            print(f"{size:>15}{seed:>6}{res.num_iterations:>12}{times['enum']:>10.3f}{times['bnb']:>10.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
