"""Interval costs, scenarios, binary solutions and the regret metrics.

Everything here is an immutable value object or a pure function over
them. All arithmetic is on Python ints, so it is exact; the only width
concern is interoperability, which is why :class:`IntervalCostVector`
rejects instances whose total upper cost reaches ``COST_BUDGET``.

Minimization is the native sense. For a maximization counterpart the
regret is ``c^s opt(s) - c^s x`` and the regret-maximizing scenario puts
the *lower* cost on selected variables and the *upper* cost elsewhere;
see ``docs/formats.md`` for the derivation of the mirrored cut rows.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

from .errors import DimensionError, InstanceError, RegretContractError

if TYPE_CHECKING:
    from .problems import ProblemDefinition

COST_BUDGET = 2**62


class ObjectiveSense(enum.Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"

    @classmethod
    def parse(cls, value: "str | ObjectiveSense") -> "ObjectiveSense":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise InstanceError(f"sense must be 'min' or 'max', got {value!r}", "sense") from None

    def better(self, a: int, b: int) -> bool:
        """True if objective value ``a`` is strictly better than ``b``."""
        return a < b if self is ObjectiveSense.MINIMIZE else a > b


MIN = ObjectiveSense.MINIMIZE
MAX = ObjectiveSense.MAXIMIZE


def _check_int(value, path: str) -> int:
    # bool is an int subclass; a stray True in a cost vector is a bug
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceError(f"expected an integer, got {value!r}", path)
    return value


@dataclass(frozen=True, order=True)
class BinarySolution:
    """An n-bit 0/1 vector. Ordering is lexicographic on the bits."""

    bits: tuple[int, ...]

    def __init__(self, bits: Iterable[int]):
        bits = tuple(bits)
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise InstanceError(f"bit must be 0 or 1, got {b!r}", f"bits[{i}]")
        object.__setattr__(self, "bits", tuple(int(b) for b in bits))

    @classmethod
    def from_string(cls, text: str) -> "BinarySolution":
        if not text or any(ch not in "01" for ch in text):
            raise InstanceError(f"not a bit string: {text!r}")
        return cls(int(ch) for ch in text)

    @classmethod
    def zeros(cls, n: int) -> "BinarySolution":
        return cls((0,) * n)

    @classmethod
    def from_indices(cls, n: int, ones: Iterable[int]) -> "BinarySolution":
        bits = [0] * n
        for i in ones:
            bits[i] = 1
        return cls(bits)

    def to_string(self) -> str:
        return "".join(map(str, self.bits))

    def ones(self) -> list[int]:
        return [i for i, b in enumerate(self.bits) if b]

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i]

    def __repr__(self) -> str:
        return f"BinarySolution('{self.to_string()}')"


@dataclass(frozen=True)
class Scenario:
    costs: tuple[int, ...]

    def __init__(self, costs: Iterable[int]):
        object.__setattr__(self, "costs", tuple(costs))

    def __len__(self) -> int:
        return len(self.costs)

    def __iter__(self) -> Iterator[int]:
        return iter(self.costs)

    def __getitem__(self, i: int) -> int:
        return self.costs[i]


@dataclass(frozen=True)
class IntervalCostVector:
    """Per-variable integer cost intervals ``[lower[i], upper[i]]``."""

    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __init__(self, lower: Sequence[int], upper: Sequence[int]):
        lower = tuple(_check_int(v, f"lower[{i}]") for i, v in enumerate(lower))
        upper = tuple(_check_int(v, f"upper[{i}]") for i, v in enumerate(upper))
        if len(lower) != len(upper):
            raise InstanceError(
                f"lower has {len(lower)} entries but upper has {len(upper)}", "upper"
            )
        if not lower:
            raise InstanceError("at least one variable is required", "n")
        for i, (lo, hi) in enumerate(zip(lower, upper)):
            if lo < 0:
                raise InstanceError(f"negative lower cost {lo}", f"lower[{i}]")
            if lo > hi:
                raise InstanceError(f"lower cost {lo} exceeds upper cost {hi}", f"lower[{i}]")
        if sum(upper) >= COST_BUDGET:
            raise InstanceError("sum of upper costs overflows the 2^62 budget", "upper")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def degenerate(cls, costs: Sequence[int]) -> "IntervalCostVector":
        return cls(costs, costs)

    @property
    def n(self) -> int:
        return len(self.lower)

    def width(self, i: int) -> int:
        return self.upper[i] - self.lower[i]

    def contains(self, s: Scenario) -> bool:
        return len(s) == self.n and all(
            lo <= c <= hi for lo, c, hi in zip(self.lower, s.costs, self.upper)
        )


@dataclass(frozen=True)
class AffineCutRow:
    """The right-hand side of one Benders cut as an affine function of x.

    ``slope`` holds nonnegative magnitudes; ``sense`` says whether they are
    added (minimization) or subtracted (maximization).
    """

    constant: int
    slope: tuple[int, ...]
    sense: ObjectiveSense = MIN

    def evaluate(self, x: BinarySolution) -> int:
        _same_length(len(self.slope), len(x))
        acc = sum(a for a, b in zip(self.slope, x.bits) if b)
        return self.constant + acc if self.sense is MIN else self.constant - acc


def _same_length(expected: int, got: int) -> None:
    if expected != got:
        raise DimensionError(f"expected a vector of length {expected}, got {got}")


def induced_scenario(
    x: BinarySolution, intervals: IntervalCostVector, sense: ObjectiveSense = MIN
) -> Scenario:
    """Scenario in which the regret of ``x`` is maximum."""
    _same_length(intervals.n, len(x))
    lo, hi = intervals.lower, intervals.upper
    if sense is MIN:
        return Scenario(hi[i] if b else lo[i] for i, b in enumerate(x.bits))
    return Scenario(lo[i] if b else hi[i] for i, b in enumerate(x.bits))


def scenario_cost(s: Scenario, x: BinarySolution) -> int:
    _same_length(len(s), len(x))
    return sum(c for c, b in zip(s.costs, x.bits) if b)


def worst_case_scenario(intervals: IntervalCostVector, sense: ObjectiveSense = MIN) -> Scenario:
    return Scenario(intervals.upper if sense is MIN else intervals.lower)


def regret(x: BinarySolution, s: Scenario, opt_value: int, sense: ObjectiveSense = MIN) -> int:
    value = scenario_cost(s, x)
    r = value - opt_value if sense is MIN else opt_value - value
    if r < 0:
        raise RegretContractError(
            f"negative regret {r}: {opt_value} is not the optimal value in this scenario"
        )
    return r


def robustness_cost(
    x: BinarySolution, intervals: IntervalCostVector, problem: "ProblemDefinition"
) -> tuple[int, BinarySolution]:
    """Maximum regret of ``x`` and the optimal solution of its induced scenario.

    Only one classical solve is needed because the maximum is attained at
    :func:`induced_scenario`.
    """
    from .errors import InfeasibleSolutionError
    from .problems import is_feasible, solve_classical

    _same_length(problem.n, len(x))
    if not is_feasible(problem, x):
        raise InfeasibleSolutionError(f"{x.to_string()} is not a feasible solution")
    s = induced_scenario(x, intervals, problem.sense)
    witness, value = solve_classical(problem, s)
    return regret(x, s, value, problem.sense), witness


def relaxed_robustness_cost(
    x: BinarySolution,
    gamma: Iterable[BinarySolution],
    intervals: IntervalCostVector,
    sense: ObjectiveSense = MIN,
) -> int:
    """Regret of ``x`` in its induced scenario, measured only against ``gamma``.

    ``gamma`` may be any nonempty iterable of solutions (a ``CutPool``
    iterates over its generators).
    """
    s = induced_scenario(x, intervals, sense)
    costs = [scenario_cost(s, y) for y in gamma]
    if not costs:
        raise ValueError("gamma must contain at least one solution")
    own = scenario_cost(s, x)
    return own - min(costs) if sense is MIN else max(costs) - own


def cut_row(
    y: BinarySolution, intervals: IntervalCostVector, sense: ObjectiveSense = MIN
) -> AffineCutRow:
    """Cut generated by ``y``: ``row.evaluate(x) == scenario_cost(induced_scenario(x), y)``."""
    _same_length(intervals.n, len(y))
    lo, hi = intervals.lower, intervals.upper
    slope = tuple((hi[i] - lo[i]) * b for i, b in enumerate(y.bits))
    base = lo if sense is MIN else hi
    constant = sum(base[i] for i, b in enumerate(y.bits) if b)
    return AffineCutRow(constant, slope, sense)
