"""JSON file formats and their validating parsers.

Every parser rejects malformed documents with a positional diagnostic
(`$.lambda[3]: ...`). Writers emit canonical documents: sorted keys,
two-space indentation, and atomic file replacement.
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Any

from .covers import CoveringMap, VoltageAssignment
from .dartgraph import DartGraph
from .errors import FormatError
from .jacobian import JFlow
from .symmetry import FiniteGroup, Permutation

__all__ = [
    "parse_graph",
    "graph_to_obj",
    "parse_group",
    "group_to_obj",
    "parse_permutation",
    "parse_voltage",
    "voltage_to_obj",
    "parse_covering",
    "covering_to_obj",
    "jacobian_report_obj",
    "load_json",
    "dump_json",
    "write_json_file",
]


def _require_keys(obj: Any, path: str, keys: set[str]) -> None:
    if not isinstance(obj, dict):
        raise FormatError(path, "expected a JSON object")
    missing = keys - set(obj)
    if missing:
        raise FormatError(path, f"missing key {sorted(missing)[0]!r}")
    extra = set(obj) - keys
    if extra:
        raise FormatError(f"{path}.{sorted(extra)[0]}", "unexpected key")


def _require_int(value: Any, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise FormatError(path, "expected an integer")
    return value


def parse_graph(obj: Any, path: str = "$") -> DartGraph:
    """Graph format: {"darts": N, "lambda": [...], "vertices": [[...]]}.

    `lambda` must be an involution of 0..N-1 and `vertices` a partition
    of 0..N-1 into non-empty classes.
    """
    _require_keys(obj, path, {"darts", "lambda", "vertices"})
    n = _require_int(obj["darts"], f"{path}.darts")
    if n < 1:
        raise FormatError(f"{path}.darts", "graphs are non-empty")
    lam = obj["lambda"]
    if not isinstance(lam, list) or len(lam) != n:
        raise FormatError(f"{path}.lambda", f"expected an array of {n} integers")
    for i, x in enumerate(lam):
        x = _require_int(x, f"{path}.lambda[{i}]")
        if not 0 <= x < n:
            raise FormatError(f"{path}.lambda[{i}]", f"dart {x} out of range")
    for i, x in enumerate(lam):
        if lam[x] != i:
            raise FormatError(f"{path}.lambda[{i}]", "lambda is not an involution")
    classes = obj["vertices"]
    if not isinstance(classes, list) or not classes:
        raise FormatError(f"{path}.vertices", "expected a non-empty array of arrays")
    vertex_of = [-1] * n
    for v, cl in enumerate(classes):
        if not isinstance(cl, list) or not cl:
            raise FormatError(f"{path}.vertices[{v}]", "vertex classes are non-empty arrays")
        for k, x in enumerate(cl):
            x = _require_int(x, f"{path}.vertices[{v}][{k}]")
            if not 0 <= x < n:
                raise FormatError(f"{path}.vertices[{v}][{k}]", f"dart {x} out of range")
            if vertex_of[x] != -1:
                raise FormatError(
                    f"{path}.vertices[{v}][{k}]", f"dart {x} appears in two classes"
                )
            vertex_of[x] = v
    if -1 in vertex_of:
        raise FormatError(
            f"{path}.vertices", f"dart {vertex_of.index(-1)} missing from the partition"
        )
    return DartGraph(lam, vertex_of)


def graph_to_obj(g: DartGraph) -> dict:
    return {
        "darts": g.dart_count,
        "lambda": list(g.lam),
        "vertices": [sorted(cl) for cl in g.vertex_darts()],
    }


def parse_group(obj: Any, path: str = "$") -> FiniteGroup:
    """Group format: {"order": n, "table": [[...]]} (identity is 0)."""
    _require_keys(obj, path, {"order", "table"})
    n = _require_int(obj["order"], f"{path}.order")
    if n < 1:
        raise FormatError(f"{path}.order", "groups are non-empty")
    table = obj["table"]
    if not isinstance(table, list) or len(table) != n:
        raise FormatError(f"{path}.table", f"expected {n} rows")
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != n:
            raise FormatError(f"{path}.table[{i}]", f"expected {n} entries")
        for j, x in enumerate(row):
            x = _require_int(x, f"{path}.table[{i}][{j}]")
            if not 0 <= x < n:
                raise FormatError(f"{path}.table[{i}][{j}]", f"element {x} out of range")
    try:
        return FiniteGroup.from_table(table)
    except ValueError as exc:
        raise FormatError(f"{path}.table", str(exc)) from exc


def group_to_obj(group: FiniteGroup) -> dict:
    return {"order": group.order, "table": [list(row) for row in group.table]}


def parse_permutation(obj: Any, degree: int, path: str = "$") -> Permutation:
    """Permutation format: image array of length `degree`."""
    if not isinstance(obj, list) or len(obj) != degree:
        raise FormatError(path, f"expected an array of {degree} integers")
    for i, x in enumerate(obj):
        x = _require_int(x, f"{path}[{i}]")
        if not 0 <= x < degree:
            raise FormatError(f"{path}[{i}]", f"image {x} out of range")
    if sorted(obj) != list(range(degree)):
        raise FormatError(path, "not a permutation")
    return Permutation(tuple(obj))


def parse_voltage(obj: Any, path: str = "$") -> VoltageAssignment:
    """Voltage format: base graph, group, per-dart element indices.

    Optional "tree": dart ids on which the assignment is trivial.
    """
    if not isinstance(obj, dict):
        raise FormatError(path, "expected a JSON object")
    keys = {"base", "group", "xi"} | ({"tree"} if "tree" in obj else set())
    _require_keys(obj, path, keys)
    base = parse_graph(obj["base"], f"{path}.base")
    problems = base.validate()
    if problems:
        raise FormatError(f"{path}.base", problems[0])
    group = parse_group(obj["group"], f"{path}.group")
    xi = obj["xi"]
    if not isinstance(xi, list) or len(xi) != base.dart_count:
        raise FormatError(f"{path}.xi", f"expected {base.dart_count} entries")
    for i, x in enumerate(xi):
        x = _require_int(x, f"{path}.xi[{i}]")
        if not 0 <= x < group.order:
            raise FormatError(f"{path}.xi[{i}]", f"element {x} out of range")
    tree = None
    if "tree" in obj:
        raw = obj["tree"]
        if not isinstance(raw, list):
            raise FormatError(f"{path}.tree", "expected an array of dart ids")
        for i, x in enumerate(raw):
            x = _require_int(x, f"{path}.tree[{i}]")
            if not 0 <= x < base.dart_count:
                raise FormatError(f"{path}.tree[{i}]", f"dart {x} out of range")
        tree = frozenset(raw)
    v = VoltageAssignment(base=base, group=group, xi=tuple(xi), tree_darts=tree)
    problems = v.violations()
    if problems:
        raise FormatError(f"{path}.xi", problems[0])
    return v


def voltage_to_obj(v: VoltageAssignment) -> dict:
    obj = {
        "base": graph_to_obj(v.base),
        "group": group_to_obj(v.group),
        "xi": list(v.xi),
    }
    if v.tree_darts is not None:
        obj["tree"] = sorted(v.tree_darts)
    return obj


def parse_covering(obj: Any, path: str = "$") -> CoveringMap:
    """Covering format: total graph, base graph, dart projection array."""
    _require_keys(obj, path, {"total", "base", "projection"})
    total = parse_graph(obj["total"], f"{path}.total")
    base = parse_graph(obj["base"], f"{path}.base")
    projection = obj["projection"]
    if not isinstance(projection, list) or len(projection) != total.dart_count:
        raise FormatError(f"{path}.projection", f"expected {total.dart_count} entries")
    for i, x in enumerate(projection):
        x = _require_int(x, f"{path}.projection[{i}]")
        if not 0 <= x < base.dart_count:
            raise FormatError(f"{path}.projection[{i}]", f"dart {x} out of range")
    return CoveringMap(total=total, base=base, projection=tuple(projection))


def covering_to_obj(c: CoveringMap) -> dict:
    return {
        "total": graph_to_obj(c.total),
        "base": graph_to_obj(c.base),
        "projection": list(c.projection),
    }


def jacobian_report_obj(flow: JFlow) -> dict:
    """Report format: factors, order as a decimal string, xi per transversal dart."""
    return {
        "factors": list(flow.group.factors),
        "order": str(flow.group.order),
        "xi": [list(flow.xi[x].coords) for x in flow.dplus],
    }


def load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as exc:
            raise FormatError("$", f"invalid JSON: {exc}") from exc


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json_file(path: str, obj: Any) -> None:
    """Atomic write: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(dump_json(obj))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
