"""Independent checkers for the decomposition.

``brute_force_robust`` enumerates the feasible set and evaluates every
robustness cost directly. ``check_trace`` audits a run's iteration records
using its own oracle calls, never the recorded values, so an engine bug
cannot hide behind its own bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    MIN,
    BinarySolution,
    IntervalCostVector,
    Scenario,
    induced_scenario,
    robustness_cost,
    scenario_cost,
    worst_case_scenario,
)
from .engine import IterationRecord
from .errors import SizeCapExceeded, TraceFormatError
from .problems import (
    DEFAULT_ENUM_CAP,
    ProblemDefinition,
    count_feasible,
    enumerate_feasible,
    is_feasible,
    solve_classical,
)
from .rng import Xoshiro256


def brute_force_robust(
    problem: ProblemDefinition, intervals: IntervalCostVector, cap: int = DEFAULT_ENUM_CAP
) -> tuple[BinarySolution, int]:
    """Robust solution (lexicographically smallest) and its cost, by enumeration."""
    best_x, best_r = None, None
    for x in enumerate_feasible(problem, cap):
        r, _ = robustness_cost(x, intervals, problem)
        if best_r is None or r < best_r:
            best_x, best_r = x, r
    assert best_x is not None
    return best_x, best_r


def brute_force_regret_table(
    problem: ProblemDefinition, intervals: IntervalCostVector, cap: int = 4096
) -> dict[BinarySolution, int]:
    """Robustness cost of every feasible solution using enumeration only.

    The inner optimum in each induced scenario is found by scanning the
    feasible set again instead of calling the classical solver, so this is
    quadratic in the size of the feasible set and meant for small instances.
    """
    omega = list(enumerate_feasible(problem, cap))
    table = {}
    for x in omega:
        s = induced_scenario(x, intervals, problem.sense)
        values = [scenario_cost(s, y) for y in omega]
        own = scenario_cost(s, x)
        table[x] = own - min(values) if problem.sense is MIN else max(values) - own
    return table


def sample_scenario(intervals: IntervalCostVector, seed: int) -> Scenario:
    """Integer scenario, uniform per coordinate, reproducible from ``seed``."""
    rng = Xoshiro256(seed)
    return Scenario(rng.integer(lo, hi) for lo, hi in zip(intervals.lower, intervals.upper))


@dataclass(frozen=True)
class AuditCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class TraceAuditReport:
    checks: list[AuditCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> AuditCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self) -> list[str]:
        return [f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in self.checks]


CHECK_NAMES = (
    "lb_nondecreasing",
    "ub_nonincreasing",
    "cut_novelty",
    "stopping_rule",
    "robustness_recomputed",
    "iteration_bound",
)


def _well_formed(trace: Sequence[IterationRecord], n: int) -> None:
    if not trace:
        raise TraceFormatError("trace is empty")
    for k, rec in enumerate(trace):
        if rec.psi != k + 1:
            raise TraceFormatError(f"psi is {rec.psi}, expected {k + 1}", k)
        if len(rec.x_bar) != n:
            raise TraceFormatError(f"x_bar has {len(rec.x_bar)} bits, expected {n}", k)
        if rec.stopped == (rec.cut_added is not None):
            raise TraceFormatError("a cut must be recorded exactly when the run did not stop", k)
        if rec.cut_added is not None and len(rec.cut_added) != n:
            raise TraceFormatError(f"cut_added has {len(rec.cut_added)} bits, expected {n}", k)
        if k < len(trace) - 1 and rec.stopped:
            raise TraceFormatError("records follow a stopped iteration", k + 1)


def check_trace(
    trace: Sequence[IterationRecord],
    problem: ProblemDefinition,
    intervals: IntervalCostVector,
    cap: int = DEFAULT_ENUM_CAP,
) -> TraceAuditReport:
    """Audit a run's iteration records against the convergence guarantees.

    Raises :class:`TraceFormatError` for structurally malformed traces;
    otherwise every check is reported, passing or not.
    """
    _well_formed(trace, problem.n)
    report = TraceAuditReport()
    add = report.checks.append

    lbs = [r.lb for r in trace]
    bad = [k for k in range(1, len(lbs)) if lbs[k] < lbs[k - 1]]
    add(AuditCheck("lb_nondecreasing", not bad, f"decreases at records {bad}" if bad else f"{len(lbs)} records"))

    bad = [k for k in range(1, len(trace)) if trace[k].ub > trace[k - 1].ub]
    above = [k for k, r in enumerate(trace) if r.lb > r.ub]
    ok = not bad and not above
    detail = "ub never increases and lb <= ub" if ok else f"ub increases at {bad}; lb > ub at {above}"
    add(AuditCheck("ub_nonincreasing", ok, detail))

    initial, _ = solve_classical(problem, worst_case_scenario(intervals, problem.sense))
    gens = [initial] + [r.cut_added for r in trace if r.cut_added is not None]
    dups = len(gens) - len(set(gens))
    infeasible = [g.to_string() for g in gens if not is_feasible(problem, g)]
    ok = dups == 0 and not infeasible
    detail = f"{len(gens)} distinct feasible generators" if ok else f"{dups} duplicates, infeasible: {infeasible}"
    add(AuditCheck("cut_novelty", ok, detail))

    last = trace[-1]
    inconsistent = [k for k, r in enumerate(trace) if r.stopped != (r.lb >= r.robustness_of_x_bar)]
    ok = last.stopped and last.lb >= last.robustness_of_x_bar and not inconsistent
    detail = (
        f"stopped at psi={last.psi} with lb={last.lb} >= R={last.robustness_of_x_bar}"
        if ok
        else f"final lb={last.lb}, R={last.robustness_of_x_bar}, stopped={last.stopped}; "
        f"inconsistent records {inconsistent}"
    )
    add(AuditCheck("stopping_rule", ok, detail))

    mismatched = []
    for k, rec in enumerate(trace):
        if not is_feasible(problem, rec.x_bar):
            mismatched.append(k)
            continue
        s = induced_scenario(rec.x_bar, intervals, problem.sense)
        _, value = solve_classical(problem, s)
        own = scenario_cost(s, rec.x_bar)
        r = own - value if problem.sense is MIN else value - own
        if r != rec.robustness_of_x_bar:
            mismatched.append(k)
    add(AuditCheck(
        "robustness_recomputed",
        not mismatched,
        f"mismatch at records {mismatched}" if mismatched else "all recorded costs reproduced",
    ))

    try:
        size = count_feasible(problem, cap)
    except SizeCapExceeded:
        add(AuditCheck("iteration_bound", True, f"feasible set exceeds {cap}; bound not checkable"))
    else:
        add(AuditCheck("iteration_bound", len(trace) <= size, f"{len(trace)} iterations, |feasible set| = {size}"))
    return report
