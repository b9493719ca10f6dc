"""Command line entry point: ``solve``, ``brute``, ``check`` and ``gen``.

Results go to stdout as JSON; diagnostics go to stderr. Exit codes::

    0 success            4 infeasible instance
    2 usage error        5 trace audit failed
    3 parse/validation   6 enumeration cap exceeded
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .engine import BendersConfig, benders_solve
from .errors import (
    InfeasibleProblemError,
    InstanceError,
    RegretBendersError,
    SizeCapExceeded,
    TraceFormatError,
)
from .formats import JsonlTraceWriter, read_instance_file, read_trace, write_instance
from .generate import KINDS, GeneratorParams, IntervalScheme, generate_instance
from .problems import DEFAULT_ENUM_CAP
from .validation import brute_force_robust, check_trace

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INFEASIBLE = 4
EXIT_AUDIT = 5
EXIT_SIZE = 6
EXIT_INTERNAL = 1

log = logging.getLogger("regret_benders")


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def cmd_solve(args) -> int:
    inst = read_instance_file(args.instance)
    config = BendersConfig(master=args.master, enum_cap=args.cap)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            result = benders_solve(inst.problem, inst.intervals, args.master, JsonlTraceWriter(fh), config)
    else:
        result = benders_solve(inst.problem, inst.intervals, args.master, None, config)
    payload = {
        "robust_solution": result.robust_solution.to_string(),
        "robust_cost": result.robust_cost,
        "iterations": result.num_iterations,
        "oracle_calls": result.oracle_calls,
        "master": args.master,
        "master_time": round(result.master_time, 6),
        "separation_time": round(result.separation_time, 6),
    }
    if args.seed_info:
        payload["seed_info"] = inst.meta.get("generator")
    _emit(payload)
    return EXIT_OK


def cmd_brute(args) -> int:
    inst = read_instance_file(args.instance)
    x, r = brute_force_robust(inst.problem, inst.intervals, args.cap)
    _emit({"robust_solution": x.to_string(), "robust_cost": r})
    return EXIT_OK


def cmd_check(args) -> int:
    inst = read_instance_file(args.instance)
    trace = read_trace(args.trace)
    report = check_trace(trace, inst.problem, inst.intervals, args.cap)
    _emit({
        "passed": report.passed,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
    })
    for line in report.lines():
        log.info(line)
    return EXIT_OK if report.passed else EXIT_AUDIT


def cmd_gen(args) -> int:
    params = GeneratorParams(
        n=args.n,
        num_solutions=args.num_solutions,
        sense=args.sense,
        layers=args.layers,
        width=args.width,
        vertices=args.vertices,
        edge_prob=args.edge_prob,
        weight_max=args.weight_max,
    )
    scheme = IntervalScheme(args.base_max, args.width_max)
    try:
        inst = generate_instance(args.kind, args.seed, params, scheme)
    except ValueError as exc:
        if isinstance(exc, RegretBendersError):
            raise
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        write_instance(args.out, inst)
    else:
        sys.stdout.write(inst.dumps())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regret-benders",
        description="Exact min-max regret solver for 0-1 problems with interval costs.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance with the Benders engine")
    p.add_argument("--instance", required=True, type=Path)
    p.add_argument("--master", choices=["enum", "bnb"], default="enum")
    p.add_argument("--trace", type=Path, help="write iteration records as JSON Lines")
    p.add_argument("--seed-info", action="store_true", help="echo the generator parameters stored in the instance")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUM_CAP, help="enumeration cap")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("brute", help="solve by exhaustive enumeration")
    p.add_argument("--instance", required=True, type=Path)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUM_CAP)
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("check", help="audit a trace produced by solve")
    p.add_argument("--instance", required=True, type=Path)
    p.add_argument("--trace", required=True, type=Path)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUM_CAP)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--out", type=Path)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--num-solutions", type=int, default=0)
    p.add_argument("--sense", choices=["min", "max"], default="min")
    p.add_argument("--layers", type=int, default=3)
    p.add_argument("--width", type=int, default=3)
    p.add_argument("--vertices", type=int, default=5)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--weight-max", type=int, default=10)
    p.add_argument("--base-max", type=int, default=10)
    p.add_argument("--width-max", type=int, default=10)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except SizeCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except InfeasibleProblemError as exc:
        print(f"error: infeasible instance: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InstanceError, TraceFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except RegretBendersError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
