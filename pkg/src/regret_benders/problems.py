"""Classical 0-1 problems used as separation oracles.

A :class:`ProblemDefinition` couples an objective sense with one of four
structures. Each structure knows how to test membership, enumerate its
feasible set in lexicographic bit order, solve the deterministic problem
exactly for a given scenario, and cheaply refute partial assignments.

Every exact solver returns the lexicographically smallest optimal bit
vector, so traces are reproducible regardless of how ties arise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from .core import MAX, MIN, BinarySolution, ObjectiveSense, Scenario
from .errors import (
    AlgorithmInvariantError,
    DimensionError,
    InfeasibleProblemError,
    InstanceError,
    SizeCapExceeded,
)

DEFAULT_ENUM_CAP = 2**22

Bits = tuple[int, ...]


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def _bits_from(n: int, ones: Iterable[int]) -> Bits:
    bits = [0] * n
    for i in ones:
        bits[i] = 1
    return tuple(bits)


# --------------------------------------------------------------------------
# tabular: an explicit list of feasible solutions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TabularStructure:
    solutions: tuple[BinarySolution, ...]
    kind = "tabular"

    def __init__(self, solutions: Iterable[BinarySolution]):
        sols = tuple(s if isinstance(s, BinarySolution) else BinarySolution(s) for s in solutions)
        if not sols:
            raise InfeasibleProblemError("tabular instance lists no feasible solution")
        n = len(sols[0])
        if n == 0:
            raise InstanceError("solutions must have at least one bit", "structure.solutions[0]")
        for k, s in enumerate(sols):
            if len(s) != n:
                raise InstanceError(
                    f"length {len(s)} differs from the first solution's {n}",
                    f"structure.solutions[{k}]",
                )
        if len(set(sols)) != len(sols):
            raise InstanceError("solutions must be pairwise distinct", "structure.solutions")
        object.__setattr__(self, "solutions", tuple(sorted(sols)))
        object.__setattr__(self, "_members", frozenset(s.bits for s in sols))

    @property
    def n(self) -> int:
        return len(self.solutions[0])

    def check_sense(self, sense: ObjectiveSense) -> None:
        pass

    def is_feasible(self, bits: Bits) -> bool:
        return tuple(bits) in self._members

    def solve(self, costs: Sequence[int], sense: ObjectiveSense) -> tuple[Bits, int]:
        best: BinarySolution | None = None
        best_value = 0
        for sol in self.solutions:  # already in lex order, so strict improvement keeps the smallest
            value = sum(c for c, b in zip(costs, sol.bits) if b)
            if best is None or sense.better(value, best_value):
                best, best_value = sol, value
        assert best is not None
        return best.bits, best_value

    def optimal_value(self, costs: Sequence[int], sense: ObjectiveSense) -> int:
        return self.solve(costs, sense)[1]

    def enumerate(self, cap: int) -> Iterator[Bits]:
        if len(self.solutions) > cap:
            raise SizeCapExceeded(cap)
        for sol in self.solutions:
            yield sol.bits

    def partial_bound(self, fixed_zero, fixed_one) -> bool:
        return any(
            all(sol.bits[i] == 0 for i in fixed_zero) and all(sol.bits[i] == 1 for i in fixed_one)
            for sol in self.solutions
        )


# --------------------------------------------------------------------------
# st_path: simple directed paths from source to target, one variable per arc
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class StPathStructure:
    num_vertices: int
    arcs: tuple[tuple[int, int], ...]
    source: int
    target: int
    _out: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _in: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    kind = "st_path"

    def __post_init__(self):
        arcs = tuple((int(a), int(b)) for a, b in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        nv = self.num_vertices
        if nv < 2:
            raise InstanceError("an s-t path needs at least two vertices", "structure.num_vertices")
        if not arcs:
            raise InstanceError("at least one arc is required", "structure.arcs")
        for name in ("source", "target"):
            v = getattr(self, name)
            if not 0 <= v < nv:
                raise InstanceError(f"vertex {v} out of range", f"structure.{name}")
        if self.source == self.target:
            raise InstanceError("source and target must differ", "structure.target")
        out: list[list[int]] = [[] for _ in range(nv)]
        inc: list[list[int]] = [[] for _ in range(nv)]
        for i, (a, b) in enumerate(arcs):
            if not (0 <= a < nv and 0 <= b < nv):
                raise InstanceError(f"endpoint out of range in {(a, b)}", f"structure.arcs[{i}]")
            if a == b:
                raise InstanceError("self-loops are not allowed", f"structure.arcs[{i}]")
            out[a].append(i)
            inc[b].append(i)
        object.__setattr__(self, "_out", tuple(map(tuple, out)))
        object.__setattr__(self, "_in", tuple(map(tuple, inc)))
        if self.target not in self._reachable(self.source, set(range(len(arcs))), forward=True):
            raise InfeasibleProblemError("target is unreachable from source; no s-t path exists")

    @property
    def n(self) -> int:
        return len(self.arcs)

    def check_sense(self, sense: ObjectiveSense) -> None:
        if sense is not MIN:
            raise InstanceError("st_path instances must use sense 'min'", "sense")

    def _reachable(self, start: int, allowed: set[int], forward: bool) -> set[int]:
        adj = self._out if forward else self._in
        end = 1 if forward else 0
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for a in adj[v]:
                if a in allowed:
                    w = self.arcs[a][end]
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        return seen

    def _distances(self, costs, allowed, start: int, forward: bool) -> list[int | None]:
        # FIFO label-correcting; labels only decrease, costs are nonnegative
        adj = self._out if forward else self._in
        end = 1 if forward else 0
        dist: list[int | None] = [None] * self.num_vertices
        dist[start] = 0
        queue = deque([start])
        queued = [False] * self.num_vertices
        queued[start] = True
        while queue:
            v = queue.popleft()
            queued[v] = False
            dv = dist[v]
            for a in adj[v]:
                if a not in allowed:
                    continue
                w = self.arcs[a][end]
                cand = dv + costs[a]
                if dist[w] is None or cand < dist[w]:
                    dist[w] = cand
                    if not queued[w]:
                        queued[w] = True
                        queue.append(w)
        return dist

    def is_feasible(self, bits: Bits) -> bool:
        chosen = [i for i, b in enumerate(bits) if b]
        succ: dict[int, int] = {}
        for i in chosen:
            tail, head = self.arcs[i]
            if tail in succ:
                return False
            succ[tail] = head
        v, seen, steps = self.source, {self.source}, 0
        while v != self.target:
            if v not in succ:
                return False
            v = succ[v]
            if v in seen:
                return False
            seen.add(v)
            steps += 1
        return steps == len(chosen)

    def optimal_value(self, costs: Sequence[int], sense: ObjectiveSense) -> int:
        d = self._distances(costs, set(range(self.n)), self.source, True)[self.target]
        if d is None:
            raise InfeasibleProblemError("no s-t path")
        return d

    def solve(self, costs: Sequence[int], sense: ObjectiveSense) -> tuple[Bits, int]:
        every = set(range(self.n))
        from_s = self._distances(costs, every, self.source, True)
        to_t = self._distances(costs, every, self.target, False)
        opt = from_s[self.target]
        if opt is None:
            raise InfeasibleProblemError("no s-t path")
        # arcs on no shortest path are zero in every optimum
        allowed = {
            i
            for i, (a, b) in enumerate(self.arcs)
            if from_s[a] is not None and to_t[b] is not None and from_s[a] + costs[i] + to_t[b] == opt
        }
        # drop arcs in index order whenever the optimum survives without them
        for i in sorted(allowed):
            allowed.discard(i)
            if self._distances(costs, allowed, self.source, True)[self.target] != opt:
                allowed.add(i)
        bits = _bits_from(self.n, allowed)
        if not self.is_feasible(bits) or sum(costs[i] for i in allowed) != opt:
            raise AlgorithmInvariantError("shortest-path tie breaking did not isolate a path")
        return bits, opt

    def enumerate(self, cap: int) -> Iterator[Bits]:
        found: list[Bits] = []
        on_path = [False] * self.num_vertices
        chosen: list[int] = []

        def dfs(v: int) -> None:
            if v == self.target:
                found.append(_bits_from(self.n, chosen))
                if len(found) > cap:
                    raise SizeCapExceeded(cap)
                return
            on_path[v] = True
            for a in self._out[v]:
                w = self.arcs[a][1]
                if not on_path[w]:
                    chosen.append(a)
                    dfs(w)
                    chosen.pop()
            on_path[v] = False

        dfs(self.source)
        found.sort()
        yield from found

    def partial_bound(self, fixed_zero, fixed_one) -> bool:
        succ: dict[int, int] = {}
        heads: set[int] = set()
        for i in fixed_one:
            a, b = self.arcs[i]
            if a in succ or b in heads or b == self.source or a == self.target:
                return False
            succ[a] = b
            heads.add(b)
        # with in/out degree <= 1 the fixed arcs form chains or cycles
        for start in succ:
            v, steps = succ[start], 1
            while v in succ and steps <= len(succ):
                if v == start:
                    return False
                v, steps = succ[v], steps + 1
        allowed = set(range(self.n)).difference(fixed_zero)
        from_s = self._reachable(self.source, allowed, forward=True)
        if self.target not in from_s:
            return False
        to_t = self._reachable(self.target, allowed, forward=False)
        return all(self.arcs[i][0] in from_s and self.arcs[i][1] in to_t for i in fixed_one)


# --------------------------------------------------------------------------
# spanning_tree: spanning trees of a connected undirected graph
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SpanningTreeStructure:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    kind = "spanning_tree"

    def __post_init__(self):
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        object.__setattr__(self, "edges", edges)
        nv = self.num_vertices
        if nv < 2:
            raise InstanceError("a spanning tree needs at least two vertices", "structure.num_vertices")
        if not edges:
            raise InstanceError("at least one edge is required", "structure.edges")
        for i, (a, b) in enumerate(edges):
            if not (0 <= a < nv and 0 <= b < nv):
                raise InstanceError(f"endpoint out of range in {(a, b)}", f"structure.edges[{i}]")
            if a == b:
                raise InstanceError("self-loops are not allowed", f"structure.edges[{i}]")
        if not self._connected(range(self.n)):
            raise InfeasibleProblemError("graph is disconnected; no spanning tree exists")

    @property
    def n(self) -> int:
        return len(self.edges)

    def check_sense(self, sense: ObjectiveSense) -> None:
        if sense is not MIN:
            raise InstanceError("spanning_tree instances must use sense 'min'", "sense")

    def _connected(self, edge_ids: Iterable[int]) -> bool:
        uf = _UnionFind(self.num_vertices)
        parts = self.num_vertices
        for i in edge_ids:
            if uf.union(*self.edges[i]):
                parts -= 1
        return parts == 1

    def is_feasible(self, bits: Bits) -> bool:
        chosen = [i for i, b in enumerate(bits) if b]
        if len(chosen) != self.num_vertices - 1:
            return False
        uf = _UnionFind(self.num_vertices)
        return all(uf.union(*self.edges[i]) for i in chosen)

    def solve(self, costs: Sequence[int], sense: ObjectiveSense) -> tuple[Bits, int]:
        # Kruskal; on equal cost the higher index goes first, which makes
        # the resulting tree the lexicographically smallest optimal one
        order = sorted(range(self.n), key=lambda i: (costs[i], -i))
        uf = _UnionFind(self.num_vertices)
        chosen = [i for i in order if uf.union(*self.edges[i])]
        if len(chosen) != self.num_vertices - 1:
            raise InfeasibleProblemError("graph is disconnected")
        return _bits_from(self.n, chosen), sum(costs[i] for i in chosen)

    def optimal_value(self, costs: Sequence[int], sense: ObjectiveSense) -> int:
        return self.solve(costs, sense)[1]

    def enumerate(self, cap: int) -> Iterator[Bits]:
        m, need_total = self.n, self.num_vertices - 1
        bits = [0] * m
        count = 0

        def rec(j: int, comp: list[int], chosen: int) -> Iterator[Bits]:
            nonlocal count
            if chosen == need_total:
                count += 1
                if count > cap:
                    raise SizeCapExceeded(cap)
                yield tuple(bits)
                return
            if m - j < need_total - chosen:
                return
            a, b = self.edges[j]
            # exclude edge j: the remaining edges must still connect the components
            uf = _UnionFind(self.num_vertices)
            for v in range(self.num_vertices):
                uf.union(v, comp[v])
            for k in range(j + 1, m):
                uf.union(*self.edges[k])
            if len({uf.find(v) for v in range(self.num_vertices)}) == 1:
                yield from rec(j + 1, comp, chosen)
            if comp[a] != comp[b]:
                old, new = comp[b], comp[a]
                merged = [new if c == old else c for c in comp]
                bits[j] = 1
                yield from rec(j + 1, merged, chosen + 1)
                bits[j] = 0

        yield from rec(0, list(range(self.num_vertices)), 0)

    def partial_bound(self, fixed_zero, fixed_one) -> bool:
        if len(fixed_one) > self.num_vertices - 1:
            return False
        uf = _UnionFind(self.num_vertices)
        if not all(uf.union(*self.edges[i]) for i in fixed_one):
            return False
        return self._connected(set(range(self.n)).difference(fixed_zero))


# --------------------------------------------------------------------------
# knapsack: 0-1 knapsack, a maximization problem
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class KnapsackStructure:
    weights: tuple[int, ...]
    capacity: int
    kind = "knapsack"

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        if not self.weights:
            raise InstanceError("at least one item is required", "structure.weights")
        for i, w in enumerate(self.weights):
            if isinstance(w, bool) or not isinstance(w, int) or w <= 0:
                raise InstanceError(f"weight must be a positive integer, got {w!r}", f"structure.weights[{i}]")
        c = self.capacity
        if isinstance(c, bool) or not isinstance(c, int) or c < 0:
            raise InstanceError(f"capacity must be a nonnegative integer, got {c!r}", "structure.capacity")

    @property
    def n(self) -> int:
        return len(self.weights)

    def check_sense(self, sense: ObjectiveSense) -> None:
        if sense is not MAX:
            raise InstanceError("knapsack instances must use sense 'max'", "sense")

    def _table(self, costs: Sequence[int]) -> list[list[int]]:
        # best[i][c]: largest value from items i.. with capacity c
        cap = min(self.capacity, sum(self.weights))
        n = self.n
        best = [[0] * (cap + 1) for _ in range(n + 1)]
        for i in range(n - 1, -1, -1):
            w, v = self.weights[i], costs[i]
            nxt, row = best[i + 1], best[i]
            for c in range(cap + 1):
                row[c] = nxt[c]
                if w <= c and nxt[c - w] + v > row[c]:
                    row[c] = nxt[c - w] + v
        return best

    def is_feasible(self, bits: Bits) -> bool:
        return sum(w for w, b in zip(self.weights, bits) if b) <= self.capacity

    def solve(self, costs: Sequence[int], sense: ObjectiveSense) -> tuple[Bits, int]:
        best = self._table(costs)
        c = len(best[0]) - 1
        bits = []
        for i in range(self.n):
            if best[i][c] == best[i + 1][c]:
                bits.append(0)  # excluding is preferred on equal value
            else:
                bits.append(1)
                c -= self.weights[i]
        return tuple(bits), best[0][-1]

    def optimal_value(self, costs: Sequence[int], sense: ObjectiveSense) -> int:
        cap = min(self.capacity, sum(self.weights))
        row = [0] * (cap + 1)
        for w, v in zip(self.weights, costs):
            for c in range(cap, w - 1, -1):
                if row[c - w] + v > row[c]:
                    row[c] = row[c - w] + v
        return row[cap]

    def enumerate(self, cap: int) -> Iterator[Bits]:
        n, weights = self.n, self.weights
        bits = [0] * n
        count = 0

        def rec(j: int, room: int) -> Iterator[Bits]:
            nonlocal count
            if j == n:
                count += 1
                if count > cap:
                    raise SizeCapExceeded(cap)
                yield tuple(bits)
                return
            yield from rec(j + 1, room)
            if weights[j] <= room:
                bits[j] = 1
                yield from rec(j + 1, room - weights[j])
                bits[j] = 0

        yield from rec(0, self.capacity)

    def partial_bound(self, fixed_zero, fixed_one) -> bool:
        return sum(self.weights[i] for i in fixed_one) <= self.capacity


Structure = Union[TabularStructure, StPathStructure, SpanningTreeStructure, KnapsackStructure]
KINDS = {
    "tabular": TabularStructure,
    "st_path": StPathStructure,
    "spanning_tree": SpanningTreeStructure,
    "knapsack": KnapsackStructure,
}


@dataclass(frozen=True)
class ProblemDefinition:
    """A classical 0-1 problem: objective sense plus feasible-set structure.

    Construction validates the structure, including that the feasible set
    is nonempty, so any instance that exists can be handed to the oracle.
    """

    sense: ObjectiveSense
    structure: Structure

    def __post_init__(self):
        object.__setattr__(self, "sense", ObjectiveSense.parse(self.sense))
        self.structure.check_sense(self.sense)

    @property
    def n(self) -> int:
        return self.structure.n

    @property
    def kind(self) -> str:
        return self.structure.kind

    @classmethod
    def tabular(cls, solutions, sense: ObjectiveSense | str = MIN) -> "ProblemDefinition":
        return cls(sense, TabularStructure(solutions))

    @classmethod
    def st_path(cls, num_vertices: int, arcs, source: int, target: int) -> "ProblemDefinition":
        return cls(MIN, StPathStructure(num_vertices, tuple(arcs), source, target))

    @classmethod
    def spanning_tree(cls, num_vertices: int, edges) -> "ProblemDefinition":
        return cls(MIN, SpanningTreeStructure(num_vertices, tuple(edges)))

    @classmethod
    def knapsack(cls, weights, capacity: int) -> "ProblemDefinition":
        return cls(MAX, KnapsackStructure(tuple(weights), capacity))


def _check_scenario(problem: ProblemDefinition, s: Scenario) -> None:
    if len(s) != problem.n:
        raise DimensionError(f"scenario has {len(s)} costs, problem has {problem.n} variables")
    if any(c < 0 for c in s.costs):
        raise ValueError("scenario costs must be nonnegative")


def solve_classical(problem: ProblemDefinition, s: Scenario) -> tuple[BinarySolution, int]:
    """Exact optimum of the deterministic problem in scenario ``s``.

    Among optimal solutions the lexicographically smallest is returned.
    """
    _check_scenario(problem, s)
    bits, value = problem.structure.solve(s.costs, problem.sense)
    return BinarySolution(bits), value


def optimal_value(problem: ProblemDefinition, s: Scenario) -> int:
    """Optimal objective in ``s`` without reconstructing a solution."""
    _check_scenario(problem, s)
    return problem.structure.optimal_value(s.costs, problem.sense)


def is_feasible(problem: ProblemDefinition, x: BinarySolution) -> bool:
    if len(x) != problem.n:
        raise DimensionError(f"solution has {len(x)} bits, problem has {problem.n} variables")
    return problem.structure.is_feasible(x.bits)


def enumerate_feasible(
    problem: ProblemDefinition, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[BinarySolution]:
    """Yield every feasible solution once, in lexicographic bit order.

    Raises :class:`SizeCapExceeded` once more than ``cap`` solutions exist.
    """
    for bits in problem.structure.enumerate(cap):
        yield BinarySolution(bits)


def count_feasible(problem: ProblemDefinition, cap: int = DEFAULT_ENUM_CAP) -> int:
    return sum(1 for _ in problem.structure.enumerate(cap))


def partial_bound(problem: ProblemDefinition, fixed_zero, fixed_one) -> bool:
    """False only when no completion of the partial assignment is feasible."""
    return problem.structure.partial_bound(fixed_zero, fixed_one)
