import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from networkx.algorithms.tree.mst import SpanningTreeIterator

from conftest import KINDS, small_instance
from regret_benders import (
    BinarySolution,
    ProblemDefinition,
    Scenario,
    enumerate_feasible,
    is_feasible,
    optimal_value,
    partial_bound,
    solve_classical,
)
from regret_benders.errors import DimensionError, InfeasibleProblemError, InstanceError, SizeCapExceeded
from regret_benders.generate import GeneratorParams, generate_instance
from regret_benders.problems import (
    KnapsackStructure,
    SpanningTreeStructure,
    StPathStructure,
    TabularStructure,
    count_feasible,
)
from regret_benders.rng import Xoshiro256

B = BinarySolution.from_string


def independent_feasible_set(problem: ProblemDefinition) -> set[tuple[int, ...]]:
    """Feasible set computed without the package's membership code."""
    st_ = problem.structure
    n = problem.n
    if isinstance(st_, TabularStructure):
        return {s.bits for s in st_.solutions}
    if isinstance(st_, KnapsackStructure):
        return {
            bits for bits in itertools.product((0, 1), repeat=n)
            if sum(w for w, b in zip(st_.weights, bits) if b) <= st_.capacity
        }
    if isinstance(st_, StPathStructure):
        g = nx.MultiDiGraph()
        g.add_nodes_from(range(st_.num_vertices))
        for i, (a, b) in enumerate(st_.arcs):
            g.add_edge(a, b, key=i)
        out = set()
        for path in nx.all_simple_edge_paths(g, st_.source, st_.target):
            bits = [0] * n
            for _, _, key in path:
                bits[key] = 1
            out.add(tuple(bits))
        return out
    g = nx.Graph()
    g.add_nodes_from(range(st_.num_vertices))
    for i, (a, b) in enumerate(st_.edges):
        g.add_edge(a, b, idx=i)
    out = set()
    for tree in SpanningTreeIterator(g):
        bits = [0] * n
        for a, b in tree.edges():
            bits[g[a][b]["idx"]] = 1
        out.add(tuple(bits))
    return out


# --- examples ---------------------------------------------------------------


def test_solve_classical_examples(triangle, small_knapsack):
    tab = ProblemDefinition.tabular([B("10"), B("01")])
    assert solve_classical(tab, Scenario([3, 2])) == (B("01"), 2)
    assert solve_classical(triangle, Scenario([1, 1, 3])) == (B("110"), 2)
    assert solve_classical(small_knapsack, Scenario([5, 4])) == (B("10"), 5)


def test_is_feasible_examples(triangle, small_knapsack):
    assert not is_feasible(small_knapsack, B("11"))
    assert is_feasible(small_knapsack, B("00"))
    assert is_feasible(triangle, B("110"))
    assert is_feasible(triangle, B("001"))
    assert not is_feasible(triangle, B("111"))
    assert not is_feasible(triangle, B("000"))
    assert not is_feasible(triangle, B("100"))
    with pytest.raises(DimensionError):
        is_feasible(triangle, B("11"))


def test_enumerate_examples(triangle, small_knapsack):
    tab = ProblemDefinition.tabular([B("110"), B("001"), B("100")])
    assert list(enumerate_feasible(tab)) == [B("001"), B("100"), B("110")]
    assert list(enumerate_feasible(small_knapsack)) == [B("00"), B("01"), B("10")]
    assert list(enumerate_feasible(triangle)) == [B("001"), B("110")]


def test_partial_bound_examples(triangle, small_knapsack):
    assert not partial_bound(small_knapsack, set(), {0, 1})
    assert partial_bound(small_knapsack, set(), set())
    assert partial_bound(triangle, set(), set())
    assert not partial_bound(triangle, set(), {2, 0})


def test_enumeration_cap():
    problem = ProblemDefinition.knapsack([1] * 6, 6)
    assert count_feasible(problem) == 64
    with pytest.raises(SizeCapExceeded, match="10"):
        list(enumerate_feasible(problem, cap=10))
    for kind in KINDS:
        p, _ = small_instance(kind, 5)
        size = count_feasible(p)
        with pytest.raises(SizeCapExceeded):
            list(enumerate_feasible(p, cap=size - 1))


def test_tie_break_is_lexicographically_smallest(parallel_edge):
    problem, _ = parallel_edge
    assert solve_classical(problem, Scenario([2, 2])) == (B("01"), 2)
    square = ProblemDefinition.spanning_tree(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert solve_classical(square, Scenario([1, 1, 1, 1]))[0] == B("0111")
    assert solve_classical(ProblemDefinition.knapsack([1, 1], 1), Scenario([3, 3]))[0] == B("01")


# --- validation -------------------------------------------------------------


def test_structure_validation():
    with pytest.raises(InstanceError, match="sense"):
        ProblemDefinition("min", KnapsackStructure((2, 3), 4))
    with pytest.raises(InstanceError, match="sense"):
        ProblemDefinition("max", StPathStructure(2, ((0, 1),), 0, 1))
    with pytest.raises(InfeasibleProblemError):
        ProblemDefinition.st_path(3, [(0, 1), (2, 1)], 0, 2)
    with pytest.raises(InfeasibleProblemError):
        ProblemDefinition.spanning_tree(4, [(0, 1), (2, 3)])
    with pytest.raises(InfeasibleProblemError):
        ProblemDefinition.tabular([])
    with pytest.raises(InstanceError, match="distinct"):
        ProblemDefinition.tabular([B("01"), B("01")])
    with pytest.raises(InstanceError):
        ProblemDefinition.tabular([B("01"), B("011")])
    with pytest.raises(InstanceError, match="self-loop"):
        SpanningTreeStructure(2, ((0, 0), (0, 1)))
    with pytest.raises(InstanceError, match="weights"):
        KnapsackStructure((2, 0), 4)
    with pytest.raises(InstanceError, match="source"):
        StPathStructure(2, ((0, 1),), 0, 0)


def test_knapsack_with_zero_capacity_only_admits_empty_set():
    p = ProblemDefinition.knapsack([1, 2], 0)
    assert list(enumerate_feasible(p)) == [B("00")]
    assert solve_classical(p, Scenario([5, 5])) == (B("00"), 0)


# --- properties -------------------------------------------------------------


def _random_scenario(rng: Xoshiro256, n: int, top: int) -> Scenario:
    return Scenario(rng.integer(0, top) for _ in range(n))


def _oracle_corpus(kind: str, count: int = 200):
    """``count`` generated instances of ``kind`` with n <= 14, varied sizes."""
    sizes = {
        "tabular": lambda k: GeneratorParams(n=2 + k % 13, num_solutions=1 + k % min(40, 2 ** (2 + k % 13)),
                                             sense="max" if k % 3 == 0 else "min"),
        "st_path": lambda k: GeneratorParams(layers=1 + k % 3, width=1 + k % 3, edge_prob=0.3 + 0.1 * (k % 6)),
        "spanning_tree": lambda k: GeneratorParams(vertices=2 + k % 5, edge_prob=0.2 + 0.1 * (k % 6)),
        "knapsack": lambda k: GeneratorParams(n=1 + k % 14, weight_max=1 + k % 9),
    }
    k = 0
    found = 0
    while found < count:
        inst = generate_instance(kind, 7000 + k, sizes[kind](k))
        if inst.n <= 14:
            found += 1
            yield k, inst.problem
        k += 1


@pytest.mark.parametrize("kind", KINDS)
def test_oracle_optimality_against_enumeration(kind):
    checked = 0
    for k, problem in _oracle_corpus(kind):
        rng = Xoshiro256(k)
        omega = list(enumerate_feasible(problem))
        for _ in range(2):
            s = _random_scenario(rng, problem.n, 3 if k % 2 else 30)  # small range forces ties
            y, value = solve_classical(problem, s)
            costs = [sum(c for c, b in zip(s.costs, x.bits) if b) for x in omega]
            best = min(costs) if problem.sense.value == "min" else max(costs)
            assert value == best == optimal_value(problem, s)
            assert y == min(x for x, c in zip(omega, costs) if c == best)
            assert solve_classical(problem, s) == (y, value)
        checked += 1
    assert checked >= 200


@pytest.mark.parametrize("kind", KINDS)
def test_enumeration_matches_independent_feasible_set(kind):
    for seed in range(40):
        problem, _ = small_instance(kind, seed)
        listed = [x.bits for x in enumerate_feasible(problem)]
        assert listed == sorted(set(listed))
        assert set(listed) == independent_feasible_set(problem)
        assert all(is_feasible(problem, BinarySolution(b)) for b in listed)


@pytest.mark.parametrize("kind", KINDS)
def test_membership_matches_independent_feasible_set(kind):
    for seed in range(15):
        problem, _ = small_instance(kind, seed)
        if problem.n > 12:
            continue
        truth = independent_feasible_set(problem)
        for bits in itertools.product((0, 1), repeat=problem.n):
            assert is_feasible(problem, BinarySolution(bits)) == (bits in truth)


@settings(max_examples=150)
@given(st.sampled_from(KINDS), st.integers(0, 10**6), st.data())
def test_partial_bound_is_sound(kind, seed, data):
    problem, _ = small_instance(kind, seed)
    n = problem.n
    labels = data.draw(st.lists(st.sampled_from([None, 0, 1]), min_size=n, max_size=n))
    zero = {i for i, v in enumerate(labels) if v == 0}
    one = {i for i, v in enumerate(labels) if v == 1}
    extends = any(
        all(x[i] == 0 for i in zero) and all(x[i] == 1 for i in one) for x in enumerate_feasible(problem)
    )
    if not partial_bound(problem, zero, one):
        assert not extends
