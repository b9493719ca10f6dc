"""Logic-based Benders' decomposition for interval min-max regret problems.

One iteration solves the master over the current cut pool, evaluates the
exact robustness cost of the master's solution with one classical solve
in its induced scenario, and either stops (the master's lower bound has
reached that cost) or adds the classical optimum as a new cut.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .core import (
    BinarySolution,
    IntervalCostVector,
    induced_scenario,
    regret,
    scenario_cost,
    worst_case_scenario,
)
from .errors import AlgorithmInvariantError, DimensionError, IterationCapExceeded
from .master import MASTER_SOLVERS, CutPool, MasterSolution
from .problems import DEFAULT_ENUM_CAP, ProblemDefinition, is_feasible, solve_classical

log = logging.getLogger(__name__)

HARD_ITERATION_CAP = 10**6

# ub before any robustness cost is known; math.inf compares exactly with ints
UNBOUNDED = math.inf


@dataclass(frozen=True)
class IterationRecord:
    psi: int
    x_bar: BinarySolution
    rho_bar: int
    lb: int
    robustness_of_x_bar: int
    ub: float | int
    cut_added: Optional[BinarySolution]
    stopped: bool


TraceSink = Callable[[IterationRecord], None]


@dataclass
class BendersConfig:
    master: str = "enum"
    max_iterations: int = HARD_ITERATION_CAP
    verify_oracle: bool = True
    enum_cap: int = DEFAULT_ENUM_CAP

    def __post_init__(self):
        if self.master not in MASTER_SOLVERS:
            raise ValueError(f"unknown master strategy {self.master!r}; choose from {sorted(MASTER_SOLVERS)}")
        if not 1 <= self.max_iterations <= HARD_ITERATION_CAP:
            raise ValueError(f"max_iterations must lie in [1, {HARD_ITERATION_CAP}]")


@dataclass
class EngineState:
    problem: ProblemDefinition
    intervals: IntervalCostVector
    config: BendersConfig = field(default_factory=BendersConfig)
    psi: int = 1
    ub: float | int = UNBOUNDED
    incumbent: Optional[BinarySolution] = None
    incumbent_cost: float | int = UNBOUNDED
    oracle_calls: int = 0
    master_time: float = 0.0
    separation_time: float = 0.0

    def solve_master(self, pool: CutPool) -> MasterSolution:
        if self.config.master == "enum":
            return MASTER_SOLVERS["enum"](self.problem, self.intervals, pool, self.config.enum_cap)
        return MASTER_SOLVERS["bnb"](self.problem, self.intervals, pool)

    def oracle(self, scenario) -> tuple[BinarySolution, int]:
        y, value = solve_classical(self.problem, scenario)
        self.oracle_calls += 1
        if self.config.verify_oracle:
            if not is_feasible(self.problem, y) or scenario_cost(scenario, y) != value:
                raise AlgorithmInvariantError(
                    f"classical oracle returned {y.to_string()} with inconsistent value {value}"
                )
        return y, value


@dataclass
class BendersResult:
    robust_solution: BinarySolution
    robust_cost: int
    iterations: list[IterationRecord]
    oracle_calls: int
    master_time: float
    separation_time: float
    cuts: list[BinarySolution]

    @property
    def num_iterations(self) -> int:
        return len(self.iterations)


def initialize(
    problem: ProblemDefinition, intervals: IntervalCostVector, state: EngineState | None = None
) -> CutPool:
    """Seed the pool with the classical optimum of the worst-case scenario."""
    if intervals.n != problem.n:
        raise DimensionError(f"intervals cover {intervals.n} variables, problem has {problem.n}")
    s = worst_case_scenario(intervals, problem.sense)
    if state is None:
        y, _ = solve_classical(problem, s)
    else:
        y, _ = state.oracle(s)
    return CutPool(intervals, problem.sense, [y])


def iteration_step(state: EngineState, pool: CutPool) -> IterationRecord:
    """Run one master solve and one separation; grow ``pool`` unless stopping."""
    if state.psi > state.config.max_iterations:
        raise IterationCapExceeded(f"more than {state.config.max_iterations} iterations")
    problem, intervals = state.problem, state.intervals

    t0 = time.perf_counter()
    master = state.solve_master(pool)
    t1 = time.perf_counter()
    x = master.x
    s = induced_scenario(x, intervals, problem.sense)
    y, value = state.oracle(s)
    r = regret(x, s, value, problem.sense)
    t2 = time.perf_counter()
    state.master_time += t1 - t0
    state.separation_time += t2 - t1

    lb = master.objective
    if lb > r:
        raise AlgorithmInvariantError(
            f"iteration {state.psi}: lower bound {lb} exceeds robustness cost {r} of {x.to_string()}"
        )
    if r < state.incumbent_cost:
        state.incumbent, state.incumbent_cost = x, r
    stopped = lb >= r
    cut = None
    if not stopped:
        state.ub = min(state.ub, r)
        if y in pool:
            raise AlgorithmInvariantError(
                f"iteration {state.psi}: separation returned {y.to_string()}, already a cut"
            )
        pool.add(y)
        cut = y
    record = IterationRecord(state.psi, x, master.rho, lb, r, state.ub, cut, stopped)
    log.debug(
        "psi=%d x=%s rho=%d lb=%d R=%d ub=%s cut=%s",
        record.psi, x.to_string(), master.rho, lb, r, state.ub, cut.to_string() if cut else "-",
    )
    state.psi += 1
    return record


def benders_solve(
    problem: ProblemDefinition,
    intervals: IntervalCostVector,
    master_strategy: str = "enum",
    sink: TraceSink | None = None,
    config: BendersConfig | None = None,
) -> BendersResult:
    """Find a robust solution and its robustness cost exactly.

    Every iteration record is passed to ``sink`` (if given) as soon as it is
    produced, in order.
    """
    config = replace(config or BendersConfig(), master=master_strategy)
    state = EngineState(problem, intervals, config)
    pool = initialize(problem, intervals, state)
    records: list[IterationRecord] = []
    while True:
        record = iteration_step(state, pool)
        records.append(record)
        if sink is not None:
            sink(record)
        if record.stopped:
            break
    last = records[-1]
    log.info(
        "converged after %d iterations: R*=%d, %d oracle calls",
        len(records), last.robustness_of_x_bar, state.oracle_calls,
    )
    return BendersResult(
        robust_solution=last.x_bar,
        robust_cost=last.robustness_of_x_bar,
        iterations=records,
        oracle_calls=state.oracle_calls,
        master_time=state.master_time,
        separation_time=state.separation_time,
        cuts=pool.generators,
    )
