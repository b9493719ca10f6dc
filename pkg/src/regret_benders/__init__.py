"""Exact min-max regret optimization for 0-1 problems with interval costs,
by logic-based Benders' decomposition."""

from .core import (
    MAX,
    MIN,
    AffineCutRow,
    BinarySolution,
    IntervalCostVector,
    ObjectiveSense,
    Scenario,
    cut_row,
    induced_scenario,
    regret,
    relaxed_robustness_cost,
    robustness_cost,
    scenario_cost,
    worst_case_scenario,
)
from .engine import BendersConfig, BendersResult, IterationRecord, benders_solve, initialize, iteration_step
from .master import CutPool, MasterSolution, solve_master_bnb, solve_master_enum
from .problems import (
    ProblemDefinition,
    enumerate_feasible,
    is_feasible,
    optimal_value,
    partial_bound,
    solve_classical,
)
from .validation import TraceAuditReport, brute_force_robust, check_trace, sample_scenario

__version__ = "0.1.0"
