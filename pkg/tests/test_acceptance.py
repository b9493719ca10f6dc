"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are written past pytest's capture so they show up in plain
``pytest`` output, e.g. ``pytest tests/test_acceptance.py -v``.
"""

import dataclasses
import itertools
import statistics

import pytest

from conftest import KINDS, small_params
from regret_benders import (
    MAX,
    BinarySolution,
    CutPool,
    benders_solve,
    check_trace,
    enumerate_feasible,
    optimal_value,
    regret,
    relaxed_robustness_cost,
    robustness_cost,
    sample_scenario,
    solve_classical,
    solve_master_bnb,
    solve_master_enum,
    worst_case_scenario,
)
from regret_benders.cli import main
from regret_benders.formats import dump_trace, write_instance
from regret_benders.generate import GeneratorParams, IntervalScheme, desk_params, generate_instance
from regret_benders.rng import Xoshiro256
from regret_benders.validation import brute_force_robust

PER_KIND = 100


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}")
        assert ok, detail

    return emit


@dataclasses.dataclass
class CorpusRun:
    kind: str
    seed: int
    problem: object
    intervals: object
    omega_size: int
    x_star: BinarySolution
    r_star: int
    results: dict


@pytest.fixture(scope="module")
def corpus():
    runs = []
    for kind in KINDS:
        for k in range(PER_KIND):
            inst = generate_instance(kind, 1000 + k, desk_params(kind, k))
            problem, intervals = inst.problem, inst.intervals
            x_star, r_star = brute_force_robust(problem, intervals)
            omega_size = sum(1 for _ in enumerate_feasible(problem))
            results = {m: benders_solve(problem, intervals, m) for m in ("enum", "bnb")}
            runs.append(CorpusRun(kind, 1000 + k, problem, intervals, omega_size, x_star, r_star, results))
    return runs


def test_c01_exact_optimality(corpus, report):
    bad = [
        (r.kind, r.seed, m)
        for r in corpus
        for m, res in r.results.items()
        if res.robust_cost != r.r_star
    ]
    counts = {k: sum(r.kind == k for r in corpus) for k in KINDS}
    report(1, "Benders optimum equals brute force, both masters", not bad and min(counts.values()) >= 100,
           f"{len(corpus)} instances {counts}, mismatches {bad[:5]}")


def test_c02_finite_convergence(corpus, report):
    over = [(r.kind, r.seed, m) for r in corpus for m, res in r.results.items() if res.num_iterations > r.omega_size]
    ratios = {
        k: statistics.mean(r.results["enum"].num_iterations / r.omega_size for r in corpus if r.kind == k)
        for k in KINDS
    }
    worst = max(res.num_iterations / r.omega_size for r in corpus for res in r.results.values())
    detail = ", ".join(f"{k} mean {v:.3f}" for k, v in ratios.items())
    report(2, "iterations <= |feasible set|", not over, f"iterations/|feasible set|: {detail}; max {worst:.3f}")


def test_c03_cut_novelty(corpus, report):
    failures = []
    traces = 0
    for r in corpus:
        for m, res in r.results.items():
            traces += 1
            audit = check_trace(res.iterations, r.problem, r.intervals)
            if not audit["cut_novelty"].passed or len(set(res.cuts)) != len(res.cuts):
                failures.append((r.kind, r.seed, m))
    report(3, "no duplicate cut generators", not failures, f"{traces} traces audited, failures {failures[:5]}")


def test_c04_bound_sandwich(corpus, report):
    failures = []
    for r in corpus:
        for m, res in r.results.items():
            recs = res.iterations
            ok = all(rec.lb <= r.r_star <= rec.ub for rec in recs)
            ok &= all(a.lb <= b.lb and b.ub <= a.ub for a, b in zip(recs, recs[1:]))
            last = recs[-1]
            ok &= last.stopped and last.lb == last.robustness_of_x_bar == r.r_star
            if not ok:
                failures.append((r.kind, r.seed, m))
    records = sum(len(res.iterations) for r in corpus for res in r.results.values())
    report(4, "lb <= R* <= ub, monotone bounds, lb = R at stop", not failures,
           f"{records} records checked, failures {failures[:5]}")


def test_c05_relaxation_laws(report):
    rng = Xoshiro256(5)
    pairs = 0
    violations = []
    instances = 0
    seed = 0
    while instances < 10:
        seed += 1
        inst = generate_instance("tabular", 500 + seed, desk_params("tabular", seed))
        problem, intervals = inst.problem, inst.intervals
        omega = list(enumerate_feasible(problem))
        if len(omega) > 64:
            continue
        instances += 1
        for x in omega:
            if relaxed_robustness_cost(x, omega, intervals, problem.sense) != robustness_cost(x, intervals, problem)[0]:
                violations.append(("full", seed, x.to_string()))
        for _ in range(200):
            x = omega[rng.integer(0, len(omega) - 1)]
            gamma = [y for y in omega if rng.bernoulli(0.3)] or [omega[rng.integer(0, len(omega) - 1)]]
            pairs += 1
            if relaxed_robustness_cost(x, gamma, intervals, problem.sense) > robustness_cost(x, intervals, problem)[0]:
                violations.append(("subset", seed, x.to_string()))
    report(5, "relaxed cost <= true cost, equal on the full set", not violations,
           f"{instances} tabular instances, {pairs} random (x, subset) pairs, violations {violations[:5]}")


def test_c06_sampled_regret_bounded(report):
    comparisons = 0
    violations = []
    for idx in range(20):
        kind = KINDS[idx % 4]
        inst = generate_instance(kind, 600 + idx, small_params(kind, idx))
        problem, intervals = inst.problem, inst.intervals
        omega = list(enumerate_feasible(problem))
        picks = [omega[(j * 7919) % len(omega)] for j in range(5)]
        for j, x in enumerate(picks):
            r_x = robustness_cost(x, intervals, problem)[0]
            for t in range(1000):
                s = sample_scenario(intervals, seed=idx * 10**6 + j * 10**4 + t)
                comparisons += 1
                if regret(x, s, optimal_value(problem, s), problem.sense) > r_x:
                    violations.append((kind, idx, x.to_string(), t))
    report(6, "sampled regret never exceeds robustness cost", not violations,
           f"{comparisons} (instance, solution, scenario) comparisons, violations {violations[:5]}")


def test_c07_master_equivalence(report):
    rng = Xoshiro256(7)
    mismatches = []
    pairs = 0
    for idx in range(320):
        kind = KINDS[idx % 4]
        inst = generate_instance(kind, 700 + idx, small_params(kind, idx))
        problem, intervals = inst.problem, inst.intervals
        omega = list(enumerate_feasible(problem))
        size = 1 + rng.integer(0, min(6, len(omega)) - 1)
        gens = []
        while len(gens) < size:
            y = omega[rng.integer(0, len(omega) - 1)]
            if y not in gens:
                gens.append(y)
        pool = CutPool(intervals, problem.sense, gens)
        e = solve_master_enum(problem, intervals, pool)
        b = solve_master_bnb(problem, intervals, pool)
        pairs += 1
        if (e.objective, e.x, e.rho) != (b.objective, b.x, b.rho):
            mismatches.append((kind, idx))
    report(7, "enumeration and branch-and-bound masters agree", not mismatches,
           f"{pairs} (instance, pool) pairs, mismatches {mismatches[:5]}")


def _max_regret_oracle(problem, intervals):
    """Robust knapsack by enumeration: regret of x at its flipped induced scenario
    (lower cost on chosen items, upper elsewhere) against the best of the feasible set."""
    omega = list(enumerate_feasible(problem))
    best = None
    for x in omega:
        s = [lo if b else up for lo, up, b in zip(intervals.lower, intervals.upper, x.bits)]
        own = sum(c for c, b in zip(s, x.bits) if b)
        top = max(sum(c for c, b in zip(s, y.bits) if b) for y in omega)
        if best is None or top - own < best[1]:
            best = (x, top - own)
    return best


def test_c08_maximization(report):
    mismatches = []
    count = 0
    for k in range(60):
        inst = generate_instance("knapsack", 800 + k, GeneratorParams(n=2 + k % 11))
        problem, intervals = inst.problem, inst.intervals
        x_ref, r_ref = _max_regret_oracle(problem, intervals)
        for m in ("enum", "bnb"):
            res = benders_solve(problem, intervals, m)
            if (res.robust_solution, res.robust_cost) != (x_ref, r_ref):
                mismatches.append((k, m))
        count += 1
    report(8, "knapsack agrees with a direct maximization-regret oracle", not mismatches,
           f"{count} knapsack instances, mismatches {mismatches[:5]}")


def test_c09_degenerate_intervals(report):
    failures = []
    for idx in range(20):
        kind = KINDS[idx % 4]
        inst = generate_instance(kind, 900 + idx, small_params(kind, idx), IntervalScheme(10, 0))
        problem, intervals = inst.problem, inst.intervals
        y, _ = solve_classical(problem, worst_case_scenario(intervals, problem.sense))
        res = benders_solve(problem, intervals)
        if (res.robust_cost, res.num_iterations, res.robust_solution) != (0, 1, y):
            failures.append((kind, idx))
    report(9, "zero-width intervals: R* = 0 in one iteration at the classical optimum", not failures,
           f"20 instances across {len(KINDS)} kinds, failures {failures}")


def _duplicate_cut(trace):
    bad = list(trace)
    bad[1] = dataclasses.replace(bad[1], cut_added=bad[0].cut_added)
    return bad


def _lb_drop(trace):
    bad = list(trace)
    k = len(bad) - 2
    bad[k] = dataclasses.replace(bad[k], lb=bad[k - 1].lb - 1)
    return bad


def _premature_stop(trace):
    return [dataclasses.replace(trace[0], stopped=True, cut_added=None)]


def test_c10_fault_injection(report, tmp_path, capsys):
    faults = [(_duplicate_cut, "cut_novelty"), (_lb_drop, "lb_nondecreasing"), (_premature_stop, "stopping_rule")]
    cases = [("tabular", 21), ("st_path", 2), ("spanning_tree", 29), ("knapsack", 15)]
    failures = []
    for (kind, seed), (fault, target) in itertools.product(cases, faults):
        inst = generate_instance(kind, seed, small_params(kind, seed))
        trace = benders_solve(inst.problem, inst.intervals).iterations
        bad = fault(trace)
        audit = check_trace(bad, inst.problem, inst.intervals)
        inst_path = tmp_path / f"{kind}.json"
        trace_path = tmp_path / f"{kind}-{target}.jsonl"
        write_instance(inst_path, inst)
        trace_path.write_text(dump_trace(bad))
        code = main(["check", "--instance", str(inst_path), "--trace", str(trace_path)])
        capsys.readouterr()
        if len(trace) < 3 or audit.failed != [target] or code != 5:
            failures.append((kind, target, audit.failed, code))
    report(10, "each injected fault fails exactly its check, CLI exit 5", not failures,
           f"{len(cases) * len(faults)} tampered traces, failures {failures}")
