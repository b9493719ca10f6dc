"""Relaxed master problem over a pool of Benders cuts.

With the cut pool fixed, the best ``rho`` for a given ``x`` is simply the
tightest cut at ``x``, so the master reduces to a pure 0-1 problem::

    minimize over x in the feasible set:  max_k ( a_k . x + b_k )

where, for minimization, ``a_k[i] = u_i - slope_k[i]`` and
``b_k = -constant_k``; for maximization ``a_k[i] = -(slope_k[i] + l_i)``
and ``b_k = constant_k``. Two exact solvers are provided: exhaustive
enumeration of the feasible set and a depth-first branch-and-bound.
Both return the lexicographically smallest optimal ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import MIN, AffineCutRow, BinarySolution, IntervalCostVector, ObjectiveSense, cut_row
from .errors import DimensionError, DuplicateCutError, SizeCapExceeded
from .problems import DEFAULT_ENUM_CAP, ProblemDefinition, enumerate_feasible, is_feasible, partial_bound


class CutPool:
    """Ordered set of cut generators with their rows.

    Duplicate generators are rejected: the decomposition never needs the
    same cut twice, so a duplicate always signals a bug upstream.
    """

    def __init__(
        self,
        intervals: IntervalCostVector,
        sense: ObjectiveSense = MIN,
        generators: Iterable[BinarySolution] = (),
    ):
        self.intervals = intervals
        self.sense = sense
        self._generators: list[BinarySolution] = []
        self._rows: list[AffineCutRow] = []
        self._index: dict[tuple[int, ...], int] = {}
        for y in generators:
            self.add(y)

    def add(self, y: BinarySolution) -> AffineCutRow:
        if len(y) != self.intervals.n:
            raise DimensionError(f"cut generator has {len(y)} bits, expected {self.intervals.n}")
        if y.bits in self._index:
            raise DuplicateCutError(f"cut generated by {y.to_string()} is already in the pool")
        row = cut_row(y, self.intervals, self.sense)
        self._index[y.bits] = len(self._generators)
        self._generators.append(y)
        self._rows.append(row)
        return row

    def copy(self) -> "CutPool":
        return CutPool(self.intervals, self.sense, self._generators)

    @property
    def generators(self) -> list[BinarySolution]:
        return list(self._generators)

    @property
    def rows(self) -> list[AffineCutRow]:
        return list(self._rows)

    def __contains__(self, y: BinarySolution) -> bool:
        return y.bits in self._index

    def __iter__(self) -> Iterator[BinarySolution]:
        return iter(self._generators)

    def __len__(self) -> int:
        return len(self._generators)

    def __repr__(self) -> str:
        return f"CutPool([{', '.join(g.to_string() for g in self._generators)}])"


@dataclass(frozen=True)
class MasterSolution:
    x: BinarySolution
    rho: int
    objective: int


def _coefficients(pool: CutPool) -> list[tuple[list[int], int]]:
    lo, hi = pool.intervals.lower, pool.intervals.upper
    out = []
    for row in pool.rows:
        if row.sense is MIN:
            out.append(([hi[i] - row.slope[i] for i in range(len(hi))], -row.constant))
        else:
            out.append(([-(row.slope[i] + lo[i]) for i in range(len(lo))], row.constant))
    return out


def _finish(x: BinarySolution, pool: CutPool) -> MasterSolution:
    values = [row.evaluate(x) for row in pool.rows]
    if pool.sense is MIN:
        rho = min(values)
        objective = sum(u for u, b in zip(pool.intervals.upper, x.bits) if b) - rho
    else:
        rho = max(values)
        objective = rho - sum(lo for lo, b in zip(pool.intervals.lower, x.bits) if b)
    return MasterSolution(x, rho, objective)


def _check(problem: ProblemDefinition, intervals: IntervalCostVector, pool: CutPool) -> None:
    if not len(pool):
        raise ValueError("the master problem needs at least one cut")
    if intervals.n != problem.n or pool.intervals.n != problem.n:
        raise DimensionError("problem, intervals and cut pool disagree on the variable count")


def solve_master_enum(
    problem: ProblemDefinition,
    intervals: IntervalCostVector,
    pool: CutPool,
    cap: int = DEFAULT_ENUM_CAP,
) -> MasterSolution:
    """Solve the master by scanning every feasible solution."""
    _check(problem, intervals, pool)
    coeffs = _coefficients(pool)
    best_x, best_obj = None, None
    try:
        for x in enumerate_feasible(problem, cap):
            ones = x.ones()
            obj = max(b + sum(a[i] for i in ones) for a, b in coeffs)
            if best_obj is None or obj < best_obj:
                best_x, best_obj = x, obj
    except SizeCapExceeded as exc:
        raise SizeCapExceeded(exc.cap, "use the branch-and-bound master solver instead") from None
    assert best_x is not None
    return _finish(best_x, pool)


def solve_master_bnb(
    problem: ProblemDefinition, intervals: IntervalCostVector, pool: CutPool
) -> MasterSolution:
    """Solve the master by depth-first branch-and-bound.

    Variables are fixed in index order, 0 before 1, and the incumbent is
    replaced only on strict improvement, which reproduces the enumeration
    solver's lexicographic tie rule. Node bound: for each cut, fixed-one
    coefficients plus every negative free coefficient; take the max over
    cuts.
    """
    _check(problem, intervals, pool)
    n = problem.n
    coeffs = _coefficients(pool)
    slopes = [a for a, _ in coeffs]
    neg_tail = []
    for a in slopes:
        tail = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            tail[i] = tail[i + 1] + min(0, a[i])
        neg_tail.append(tail)

    bits = [0] * n
    fixed_zero: set[int] = set()
    fixed_one: set[int] = set()
    best: list = [None, None]  # objective, x

    def visit(j: int, acc: list[int]) -> None:
        bound = max(acc[k] + neg_tail[k][j] for k in range(len(acc)))
        if best[0] is not None and bound >= best[0]:
            return
        if not partial_bound(problem, fixed_zero, fixed_one):
            return
        if j == n:
            x = BinarySolution(bits)
            if is_feasible(problem, x):
                best[0], best[1] = bound, x
            return
        fixed_zero.add(j)
        visit(j + 1, acc)
        fixed_zero.discard(j)
        fixed_one.add(j)
        bits[j] = 1
        visit(j + 1, [acc[k] + slopes[k][j] for k in range(len(acc))])
        bits[j] = 0
        fixed_one.discard(j)

    visit(0, [b for _, b in coeffs])
    if best[1] is None:
        raise AssertionError("branch-and-bound found no feasible leaf in a nonempty feasible set")
    return _finish(best[1], pool)


MASTER_SOLVERS = {"enum": solve_master_enum, "bnb": solve_master_bnb}
