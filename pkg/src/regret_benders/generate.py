"""Seeded random instance families.

All randomness comes from :class:`~regret_benders.rng.Xoshiro256`; the
structure is drawn first, then the cost intervals
(``l_i ~ U[0, base_max]``, ``u_i = l_i + U[0, width_max]``), so identical
arguments always produce byte-identical files.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .core import IntervalCostVector, ObjectiveSense
from .formats import InstanceFile
from .problems import (
    KnapsackStructure,
    ProblemDefinition,
    SpanningTreeStructure,
    StPathStructure,
    TabularStructure,
)
from .rng import Xoshiro256

KINDS = ("tabular", "st_path", "spanning_tree", "knapsack")


@dataclass(frozen=True)
class IntervalScheme:
    base_max: int = 10
    width_max: int = 10


@dataclass(frozen=True)
class GeneratorParams:
    n: int = 8  # tabular and knapsack variable count
    num_solutions: int = 0  # tabular; 0 means min(2^n, 2n)
    sense: str = "min"  # tabular only
    layers: int = 3  # st_path
    width: int = 3  # st_path
    vertices: int = 5  # spanning_tree
    edge_prob: float = 0.5  # st_path and spanning_tree
    weight_max: int = 10  # knapsack

    def validate(self, kind: str) -> None:
        if kind in ("tabular", "knapsack") and self.n < 1:
            raise ValueError("n must be positive")
        if kind == "tabular" and self.num_solutions < 0:
            raise ValueError("num_solutions must be nonnegative")
        if kind == "st_path" and (self.layers < 1 or self.width < 1):
            raise ValueError("layers and width must be positive")
        if kind == "spanning_tree" and self.vertices < 2:
            raise ValueError("vertices must be at least 2")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise ValueError("edge_prob must lie in [0, 1]")
        if self.weight_max < 1:
            raise ValueError("weight_max must be positive")


def _tabular(rng: Xoshiro256, p: GeneratorParams) -> ProblemDefinition:
    total = 2**p.n
    k = p.num_solutions or min(total, 2 * p.n)
    if k > total:
        raise ValueError(f"cannot draw {k} distinct solutions of {p.n} bits")
    chosen: set[int] = set()
    while len(chosen) < k:
        chosen.add(rng.integer(0, total - 1))
    sols = [tuple((v >> (p.n - 1 - i)) & 1 for i in range(p.n)) for v in sorted(chosen)]
    return ProblemDefinition(ObjectiveSense.parse(p.sense), TabularStructure(sols))


def _layered_dag(rng: Xoshiro256, p: GeneratorParams) -> ProblemDefinition:
    # vertex 0 is the source, layers occupy 1..L*W, the last vertex is the target
    L, W = p.layers, p.width
    layer = [[1 + k * W + j for j in range(W)] for k in range(L)]
    target = 1 + L * W
    arcs = {(0, v) for v in layer[0]} | {(v, target) for v in layer[-1]}
    for k in range(L - 1):
        for a in layer[k]:
            for b in layer[k + 1]:
                if rng.bernoulli(p.edge_prob):
                    arcs.add((a, b))
        for b in layer[k + 1]:
            if not any((a, b) in arcs for a in layer[k]):
                arcs.add((layer[k][rng.integer(0, W - 1)], b))
        for a in layer[k]:
            if not any((a, b) in arcs for b in layer[k + 1]):
                arcs.add((a, layer[k + 1][rng.integer(0, W - 1)]))
    return ProblemDefinition.st_path(target + 1, sorted(arcs), 0, target)


def _connected_graph(rng: Xoshiro256, p: GeneratorParams) -> ProblemDefinition:
    V = p.vertices
    edges = {(rng.integer(0, v - 1), v) for v in range(1, V)}  # random spanning tree
    for a in range(V):
        for b in range(a + 1, V):
            if (a, b) not in edges and rng.bernoulli(p.edge_prob):
                edges.add((a, b))
    return ProblemDefinition.spanning_tree(V, sorted(edges))


def _knapsack(rng: Xoshiro256, p: GeneratorParams) -> ProblemDefinition:
    weights = [rng.integer(1, p.weight_max) for _ in range(p.n)]
    return ProblemDefinition.knapsack(weights, max(1, sum(weights) // 2))


_BUILDERS = {
    "tabular": _tabular,
    "st_path": _layered_dag,
    "spanning_tree": _connected_graph,
    "knapsack": _knapsack,
}


def generate_instance(
    kind: str,
    seed: int,
    params: GeneratorParams | None = None,
    scheme: IntervalScheme | None = None,
) -> InstanceFile:
    if kind not in _BUILDERS:
        raise ValueError(f"unknown kind {kind!r}; choose from {KINDS}")
    params = params or GeneratorParams()
    scheme = scheme or IntervalScheme()
    params.validate(kind)
    if scheme.base_max < 0 or scheme.width_max < 0:
        raise ValueError("base_max and width_max must be nonnegative")
    rng = Xoshiro256(seed)
    problem = _BUILDERS[kind](rng, params)
    lower, upper = [], []
    for _ in range(problem.n):
        lo = rng.integer(0, scheme.base_max)
        lower.append(lo)
        upper.append(lo + rng.integer(0, scheme.width_max))
    meta = {"generator": {"kind": kind, "seed": seed, **asdict(params), **asdict(scheme)}}
    return InstanceFile(problem, IntervalCostVector(lower, upper), meta)


def desk_params(kind: str, k: int) -> GeneratorParams:
    """The ``k``-th size in a schedule that stays small enough for brute force.

    tabular n <= 16, st_path layered DAGs up to 4x4, spanning_tree graphs up
    to 7 vertices, knapsack n <= 14. Every fourth tabular instance maximizes.
    """
    if kind == "tabular":
        n = 4 + k % 13
        return GeneratorParams(n=n, num_solutions=min(2**n, 2 + 3 * (k % 20)), sense="max" if k % 4 == 3 else "min")
    if kind == "st_path":
        return GeneratorParams(layers=1 + k % 4, width=1 + (k // 4) % 4)
    if kind == "spanning_tree":
        return GeneratorParams(vertices=3 + k % 5)
    if kind == "knapsack":
        return GeneratorParams(n=2 + k % 13)
    raise ValueError(f"unknown kind {kind!r}; choose from {KINDS}")
