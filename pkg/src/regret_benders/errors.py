"""Exception hierarchy shared by every module.

The CLI maps each family to an exit code, so new errors should subclass
one of these rather than raising bare ``ValueError``/``RuntimeError``.
"""

from __future__ import annotations


class RegretBendersError(Exception):
    """Base class for all package errors."""


class DimensionError(RegretBendersError, ValueError):
    """Vectors of incompatible length were combined."""


class InstanceError(RegretBendersError, ValueError):
    """An instance (or one of its parts) violates a structural invariant.

    ``path`` is a dotted field path such as ``"lower[3]"`` or
    ``"structure.arcs[2]"`` so diagnostics point at the offending value.
    """

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class InfeasibleProblemError(RegretBendersError):
    """The classical problem has no feasible solution."""


class InfeasibleSolutionError(RegretBendersError, ValueError):
    """A bit vector that is not a member of the feasible set was supplied."""


class RegretContractError(RegretBendersError, ValueError):
    """A regret came out negative, so the supplied optimum was not optimal."""


class SizeCapExceeded(RegretBendersError):
    """Enumeration produced more items than the configured cap."""

    def __init__(self, cap: int, hint: str = ""):
        self.cap = cap
        msg = f"enumeration exceeded the cap of {cap} feasible solutions"
        super().__init__(f"{msg}; {hint}" if hint else msg)


class AlgorithmInvariantError(RegretBendersError):
    """An internal invariant of the decomposition broke (implementation bug)."""


class IterationCapExceeded(RegretBendersError):
    """The engine ran more iterations than its configured hard cap."""


class TraceFormatError(RegretBendersError, ValueError):
    """A trace is malformed; ``index`` is the offending record position."""

    def __init__(self, message: str, index: int | None = None):
        self.index = index
        super().__init__(f"record {index}: {message}" if index is not None else message)


class DuplicateCutError(RegretBendersError, ValueError):
    """A cut generator already present in the pool was added again."""
