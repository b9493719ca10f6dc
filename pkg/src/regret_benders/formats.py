"""Instance files (JSON) and iteration traces (JSON Lines).

See ``docs/formats.md`` for the field-by-field description and one worked
example per problem kind.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Any, Iterable

from .core import BinarySolution, IntervalCostVector, ObjectiveSense
from .engine import IterationRecord
from .errors import InstanceError, TraceFormatError
from .problems import (
    KnapsackStructure,
    ProblemDefinition,
    SpanningTreeStructure,
    StPathStructure,
    TabularStructure,
)

FORMAT_VERSION = 1


@dataclass(frozen=True)
class InstanceFile:
    problem: ProblemDefinition
    intervals: IntervalCostVector
    meta: dict = field(default_factory=dict, compare=False)
    format_version: int = FORMAT_VERSION

    @property
    def kind(self) -> str:
        return self.problem.kind

    @property
    def sense(self) -> ObjectiveSense:
        return self.problem.sense

    @property
    def n(self) -> int:
        return self.problem.n

    def to_dict(self) -> dict[str, Any]:
        st = self.problem.structure
        if isinstance(st, TabularStructure):
            structure: dict[str, Any] = {"solutions": [s.to_string() for s in st.solutions]}
        elif isinstance(st, StPathStructure):
            structure = {
                "num_vertices": st.num_vertices,
                "arcs": [list(a) for a in st.arcs],
                "source": st.source,
                "target": st.target,
            }
        elif isinstance(st, SpanningTreeStructure):
            structure = {"num_vertices": st.num_vertices, "edges": [list(e) for e in st.edges]}
        else:
            structure = {"weights": list(st.weights), "capacity": st.capacity}
        out = {
            "format_version": self.format_version,
            "kind": self.kind,
            "sense": self.sense.value,
            "n": self.n,
            "lower": list(self.intervals.lower),
            "upper": list(self.intervals.upper),
            "structure": structure,
        }
        if self.meta:
            out["meta"] = self.meta
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _get(obj: dict, key: str, kind: type | tuple, path: str):
    if not isinstance(obj, dict):
        raise InstanceError("expected a JSON object", path or "<root>")
    if key not in obj:
        raise InstanceError("missing field", f"{path}.{key}" if path else key)
    value = obj[key]
    where = f"{path}.{key}" if path else key
    if isinstance(value, bool) and kind is not bool or not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise InstanceError(f"expected {names}, got {type(value).__name__}", where)
    return value


def _int_list(value: list, where: str) -> list[int]:
    for i, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InstanceError(f"expected an integer, got {v!r}", f"{where}[{i}]")
    return value


def _pairs(value: list, where: str) -> list[tuple[int, int]]:
    out = []
    for i, v in enumerate(value):
        if not isinstance(v, list) or len(v) != 2:
            raise InstanceError("expected a pair [u, v]", f"{where}[{i}]")
        out.append(tuple(_int_list(v, f"{where}[{i}]")))
    return out


def instance_from_dict(data: Any) -> InstanceFile:
    """Build and fully validate an instance from decoded JSON."""
    version = _get(data, "format_version", int, "")
    if version != FORMAT_VERSION:
        raise InstanceError(f"unsupported format version {version}", "format_version")
    kind = _get(data, "kind", str, "")
    sense = ObjectiveSense.parse(_get(data, "sense", str, ""))
    n = _get(data, "n", int, "")
    lower = _int_list(_get(data, "lower", list, ""), "lower")
    upper = _int_list(_get(data, "upper", list, ""), "upper")
    st = _get(data, "structure", dict, "")
    p = "structure"
    if kind == "tabular":
        raw = _get(st, "solutions", list, p)
        sols = []
        for i, text in enumerate(raw):
            if not isinstance(text, str):
                raise InstanceError("expected a bit string", f"{p}.solutions[{i}]")
            try:
                sols.append(BinarySolution.from_string(text))
            except InstanceError as exc:
                raise InstanceError(str(exc), f"{p}.solutions[{i}]") from None
        structure = TabularStructure(sols)
    elif kind == "st_path":
        structure = StPathStructure(
            _get(st, "num_vertices", int, p),
            tuple(_pairs(_get(st, "arcs", list, p), f"{p}.arcs")),
            _get(st, "source", int, p),
            _get(st, "target", int, p),
        )
    elif kind == "spanning_tree":
        structure = SpanningTreeStructure(
            _get(st, "num_vertices", int, p),
            tuple(_pairs(_get(st, "edges", list, p), f"{p}.edges")),
        )
    elif kind == "knapsack":
        structure = KnapsackStructure(
            tuple(_int_list(_get(st, "weights", list, p), f"{p}.weights")),
            _get(st, "capacity", int, p),
        )
    else:
        raise InstanceError(f"unknown kind {kind!r}", "kind")
    problem = ProblemDefinition(sense, structure)
    intervals = IntervalCostVector(lower, upper)
    if n < 1:
        raise InstanceError("must be a positive integer", "n")
    if intervals.n != n:
        raise InstanceError(f"n is {n} but {intervals.n} cost intervals are given", "lower")
    if problem.n != n:
        raise InstanceError(f"n is {n} but the structure defines {problem.n} variables", "structure")
    meta = data.get("meta", {})
    if not isinstance(meta, dict):
        raise InstanceError("expected a JSON object", "meta")
    return InstanceFile(problem, intervals, meta, version)


def read_instance_file(path: str | Path) -> InstanceFile:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InstanceError(f"invalid JSON: {exc}") from None
    return instance_from_dict(data)


def parse_instance(path: str | Path) -> tuple[ProblemDefinition, IntervalCostVector]:
    inst = read_instance_file(path)
    return inst.problem, inst.intervals


def write_instance(path: str | Path, instance: InstanceFile) -> None:
    Path(path).write_text(instance.dumps(), encoding="utf-8")


# --------------------------------------------------------------------------
# traces
# --------------------------------------------------------------------------


def record_to_dict(rec: IterationRecord) -> dict[str, Any]:
    return {
        "psi": rec.psi,
        "x_bar": rec.x_bar.to_string(),
        "rho_bar": rec.rho_bar,
        "lb": rec.lb,
        "robustness_of_x_bar": rec.robustness_of_x_bar,
        "ub": "inf" if rec.ub == math.inf else rec.ub,
        "cut_added": rec.cut_added.to_string() if rec.cut_added is not None else None,
        "stopped": rec.stopped,
    }


def record_from_dict(data: Any, index: int | None = None) -> IterationRecord:
    def need(key: str, kind):
        if not isinstance(data, dict) or key not in data:
            raise TraceFormatError(f"missing field {key!r}", index)
        v = data[key]
        if isinstance(v, bool) and kind is not bool or not isinstance(v, kind):
            raise TraceFormatError(f"field {key!r} has the wrong type", index)
        return v

    def bits(key: str, optional: bool = False):
        v = data.get(key) if isinstance(data, dict) else None
        if v is None and optional and isinstance(data, dict) and key in data:
            return None
        v = need(key, str)
        try:
            return BinarySolution.from_string(v)
        except InstanceError:
            raise TraceFormatError(f"field {key!r} is not a bit string", index) from None

    ub = need("ub", (int, str))
    if isinstance(ub, str):
        if ub != "inf":
            raise TraceFormatError("ub must be an integer or the string 'inf'", index)
        ub = math.inf
    return IterationRecord(
        psi=need("psi", int),
        x_bar=bits("x_bar"),
        rho_bar=need("rho_bar", int),
        lb=need("lb", int),
        robustness_of_x_bar=need("robustness_of_x_bar", int),
        ub=ub,
        cut_added=bits("cut_added", optional=True),
        stopped=need("stopped", bool),
    )


class JsonlTraceWriter:
    """Trace sink writing one JSON object per iteration record."""

    def __init__(self, stream: IO[str]):
        self.stream = stream

    def __call__(self, rec: IterationRecord) -> None:
        self.stream.write(json.dumps(record_to_dict(rec)) + "\n")
        self.stream.flush()


def dump_trace(records: Iterable[IterationRecord]) -> str:
    return "".join(json.dumps(record_to_dict(r)) + "\n" for r in records)


def load_trace(text: str) -> list[IterationRecord]:
    records = []
    for k, line in enumerate(l for l in text.splitlines() if l.strip()):
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TraceFormatError(f"invalid JSON: {exc}", k) from None
        records.append(record_from_dict(data, k))
    return records


def read_trace(path: str | Path) -> list[IterationRecord]:
    return load_trace(Path(path).read_text(encoding="utf-8"))
