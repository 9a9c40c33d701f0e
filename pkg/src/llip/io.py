"""JSON / CSV interchange.

Grid:      {"points": [[x, ...], ...], "metric": "euclidean" | "chebyshev", "id": "<hash>"}
Function:  {"grid_id": "<hash>", "values": [...]}
ScalarPWL: {"breakpoints": [...], "values": [...], "left_slope": x, "right_slope": y}
Operator:  {"kind": "sample" | "superposition" | "tensor" | "multiplication",
            "grid_id": "<hash>", "grid": {...} (optional), <payload>}

Payloads: sample ``"samples": [{"g": [...], "Tg": [...]}, ...]``; superposition
``"slices": [pwl, ...]``; tensor ``"terms": [{"f": [...], "phi": pwl}, ...]``;
multiplication ``"h": [...]``.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .errors import GridMismatch, LLipError, SchemaError
from .grid import CompactGrid, GridFunction
from .operators import (
    KINDS,
    MultiplicationOperator,
    OperatorRep,
    SampleOperator,
    SuperpositionField,
    TensorOperator,
)
from .pwl import ScalarPWL


def dumps(obj) -> str:
    """Deterministic JSON: insertion key order, shortest round-trip floats, no NaN."""
    return json.dumps(obj, allow_nan=False)


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: expected a JSON object at top level")
    return data


def _get(d: dict, key: str, kind, where: str):
    if not isinstance(d, dict) or key not in d:
        raise SchemaError(f"{where}: missing key {key!r}")
    val = d[key]
    if kind is float:
        ok = isinstance(val, (int, float)) and not isinstance(val, bool)
    else:
        ok = isinstance(val, kind)
    if not ok:
        raise SchemaError(f"{where}: key {key!r} has the wrong type")
    return val


def _numbers(val, where: str) -> np.ndarray:
    if not isinstance(val, list) or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in val):
        raise SchemaError(f"{where}: expected a list of numbers")
    return np.array(val, dtype=np.float64)


# -- grids and functions ------------------------------------------------------


def grid_to_dict(grid: CompactGrid) -> dict:
    return {"points": grid.points.tolist(), "metric": grid.metric, "id": grid.id}


def grid_from_dict(d: dict, where: str = "grid") -> CompactGrid:
    pts = _get(d, "points", list, where)
    if not pts or not all(isinstance(p, list) for p in pts):
        raise SchemaError(f"{where}: points must be a list of coordinate lists")
    rows = [_numbers(p, f"{where}.points") for p in pts]
    if len({len(r) for r in rows}) != 1:
        raise SchemaError(f"{where}: points have inconsistent dimension")
    metric = d.get("metric", "euclidean")
    try:
        grid = CompactGrid(np.array(rows), metric)
    except LLipError as exc:
        raise SchemaError(f"{where}: {exc}") from None
    if "id" in d and d["id"] != grid.id:
        raise SchemaError(f"{where}: stored id {d['id']!r} does not match content hash {grid.id!r}")
    return grid


def function_to_dict(f: GridFunction) -> dict:
    return {"grid_id": f.grid_id, "values": f.values.tolist()}


def function_from_dict(d: dict, grid: CompactGrid, where: str = "function") -> GridFunction:
    gid = _get(d, "grid_id", str, where)
    if gid != grid.id:
        raise GridMismatch(f"{where}: grid_id {gid!r} does not match grid {grid.id!r}")
    return GridFunction(grid, _numbers(_get(d, "values", list, where), where))


def read_grid_csv(path, metric: str = "euclidean") -> CompactGrid:
    """One row per point, coordinates only."""
    rows = _read_csv_rows(path)
    return CompactGrid(np.array(rows), metric)


def read_function_csv(path, metric: str = "euclidean") -> tuple[CompactGrid, GridFunction]:
    """One row per point: coordinates, then the value."""
    rows = np.array(_read_csv_rows(path))
    if rows.shape[1] < 2:
        raise SchemaError(f"{path}: need at least one coordinate column and a value column")
    grid = CompactGrid(rows[:, :-1], metric)
    return grid, GridFunction(grid, rows[:, -1])


def _read_csv_rows(path) -> list[list[float]]:
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            try:
                rows.append([float(x) for x in row])
            except ValueError:
                if not rows and lineno == 1:
                    continue  # header
                raise SchemaError(f"{path}:{lineno}: non-numeric entry") from None
    if len({len(r) for r in rows}) > 1:
        raise SchemaError(f"{path}: rows have different lengths")
    return rows


def load_grid(path) -> CompactGrid:
    if str(path).endswith(".csv"):
        return read_grid_csv(path)
    return grid_from_dict(load_json(path), str(path))


def load_function(path, grid: CompactGrid | None = None) -> GridFunction:
    """Function from JSON (needs ``grid``, or an embedded ``"grid"``) or CSV."""
    if str(path).endswith(".csv"):
        g, f = read_function_csv(path)
        if grid is not None:
            grid.check_same(g)
        return f
    d = load_json(path)
    if "grid" in d:
        embedded = grid_from_dict(d["grid"], f"{path}: grid")
        if grid is not None:
            grid.check_same(embedded)
        grid = embedded
    if grid is None:
        raise SchemaError(f"{path}: no grid available; pass --grid or embed a 'grid' object")
    return function_from_dict(d, grid, str(path))


# -- operators ----------------------------------------------------------------


def pwl_from_dict(d, where: str = "pwl") -> ScalarPWL:
    try:
        return ScalarPWL(
            _numbers(_get(d, "breakpoints", list, where), where),
            _numbers(_get(d, "values", list, where), where),
            _get(d, "left_slope", float, where),
            _get(d, "right_slope", float, where),
        )
    except SchemaError:
        raise
    except LLipError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def operator_to_dict(op: OperatorRep, embed_grid: bool = True) -> dict:
    d = {"kind": op.kind, "grid_id": op.grid_id}
    if embed_grid:
        d["grid"] = grid_to_dict(op.grid)
    if isinstance(op, SampleOperator):
        d["samples"] = [{"g": g.tolist(), "Tg": t.tolist()} for g, t in zip(op.inputs, op.outputs)]
    elif isinstance(op, SuperpositionField):
        d["slices"] = [s.to_dict() for s in op.slices]
    elif isinstance(op, TensorOperator):
        d["terms"] = [{"f": f.values.tolist(), "phi": phi.to_dict()} for f, phi in op.terms]
    elif isinstance(op, MultiplicationOperator):
        d["h"] = op.h.values.tolist()
    return d


def operator_from_dict(d: dict, grid: CompactGrid | None = None, where: str = "operator") -> OperatorRep:
    kind = _get(d, "kind", str, where)
    if kind not in KINDS:
        raise SchemaError(f"{where}: unknown kind {kind!r}; expected one of {sorted(KINDS)}")
    gid = _get(d, "grid_id", str, where)
    if "grid" in d:
        embedded = grid_from_dict(d["grid"], f"{where}.grid")
        if grid is not None:
            grid.check_same(embedded)
        grid = embedded
    if grid is None:
        raise SchemaError(f"{where}: no grid available; pass --grid or embed a 'grid' object")
    if gid != grid.id:
        raise GridMismatch(f"{where}: grid_id {gid!r} does not match grid {grid.id!r}")

    def fn(values, w):
        return GridFunction(grid, _numbers(values, w))

    if kind == "sample":
        items = _get(d, "samples", list, where)
        pairs = []
        for j, item in enumerate(items):
            w = f"{where}.samples[{j}]"
            pairs.append((fn(_get(item, "g", list, w), w), fn(_get(item, "Tg", list, w), w)))
        return SampleOperator(grid, pairs)
    if kind == "superposition":
        items = _get(d, "slices", list, where)
        return SuperpositionField(grid, [pwl_from_dict(s, f"{where}.slices[{w}]") for w, s in enumerate(items)])
    if kind == "tensor":
        items = _get(d, "terms", list, where)
        terms = []
        for i, item in enumerate(items):
            w = f"{where}.terms[{i}]"
            terms.append((fn(_get(item, "f", list, w), w), pwl_from_dict(_get(item, "phi", dict, w), w)))
        return TensorOperator(grid, terms)
    return MultiplicationOperator(grid, fn(_get(d, "h", list, where), where))


def load_operator(path, grid: CompactGrid | None = None) -> OperatorRep:
    return operator_from_dict(load_json(path), grid, str(path))


def write_text(path, text: str) -> None:
    Path(path).write_text(text + "\n")
