from pathlib import Path

import hypothesis
import pytest

from regret_benders import IntervalCostVector, ProblemDefinition
from regret_benders.generate import GeneratorParams, generate_instance

hypothesis.settings.register_profile("fast", max_examples=10)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.register_profile("default", deadline=None)
hypothesis.settings.load_profile("default")

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def parallel_edge():
    """Two parallel arcs A:[1,3], B:[2,2] between source and target."""
    problem = ProblemDefinition.st_path(2, [(0, 1), (0, 1)], 0, 1)
    return problem, IntervalCostVector([1, 2], [3, 2])


@pytest.fixture
def triangle():
    """s->a, a->t, s->t with arc order as listed (s=0, a=1, t=2)."""
    return ProblemDefinition.st_path(3, [(0, 1), (1, 2), (0, 2)], 0, 2)


@pytest.fixture
def small_knapsack():
    return ProblemDefinition.knapsack([2, 3], 4)


def small_params(kind: str, k: int) -> GeneratorParams:
    """Desk-scale size schedule cycling through sizes with ``k``."""
    if kind == "tabular":
        return GeneratorParams(n=3 + k % 8, sense="max" if k % 4 == 3 else "min")
    if kind == "st_path":
        return GeneratorParams(layers=1 + k % 3, width=2 + (k // 3) % 2)
    if kind == "spanning_tree":
        return GeneratorParams(vertices=3 + k % 3)
    return GeneratorParams(n=2 + k % 8)


def small_instance(kind: str, seed: int, **scheme):
    from regret_benders.generate import IntervalScheme

    inst = generate_instance(kind, seed, small_params(kind, seed), IntervalScheme(**scheme) if scheme else None)
    return inst.problem, inst.intervals


KINDS = ["tabular", "st_path", "spanning_tree", "knapsack"]
