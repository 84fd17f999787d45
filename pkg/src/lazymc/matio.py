"""Matrix, vector and report I/O.

Matrices travel as JSON documents ``{"d": n, "rows": [[...], ...]}`` or as
headerless CSV.  Floats are serialized through Python's shortest round-trip
representation (up to 17 significant digits), so every emitted document
re-parses to bit-identical values; report JSON uses sorted keys and compact
separators, making output byte-deterministic for a given input and seed.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from pathlib import Path
from typing import Union

import numpy as np

from .chain import StochasticMatrix, validate_stochastic
from .errors import ShapeMismatch

__all__ = [
    "jsonable",
    "dumps",
    "matrix_to_json_dict",
    "save_matrix",
    "load_array",
    "load_matrix",
    "load_vector",
    "curve_to_csv",
]

PathLike = Union[str, Path]


def jsonable(obj):
    """Recursively convert dataclasses, numpy arrays and numpy scalars into
    plain JSON-serializable Python values."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, StochasticMatrix):
        return matrix_to_json_dict(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def dumps(obj) -> str:
    """Canonical JSON for reports: sorted keys, compact separators, lossless
    floats."""
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"))


def matrix_to_json_dict(M) -> dict:
    arr = np.asarray(M, dtype=float)
    return {"d": int(arr.shape[0]), "rows": [[float(v) for v in row] for row in arr]}


def save_matrix(M, path: PathLike, fmt: str | None = None) -> None:
    """Write a matrix as JSON (default) or headerless CSV, chosen by ``fmt``
    or the file suffix."""
    path = Path(path)
    fmt = fmt or ("csv" if path.suffix.lower() == ".csv" else "json")
    arr = np.asarray(M, dtype=float)
    if fmt == "json":
        path.write_text(json.dumps(matrix_to_json_dict(arr), sort_keys=True) + "\n")
    elif fmt == "csv":
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            for row in arr:
                writer.writerow([repr(float(v)) for v in row])
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")


def _parse_csv_rows(text: str) -> list[list[float]]:
    rows = []
    for record in csv.reader(io.StringIO(text)):
        if record:
            rows.append([float(v) for v in record])
    return rows


def load_array(path: PathLike) -> np.ndarray:
    """Read a raw (not necessarily stochastic) square matrix from JSON or
    CSV."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        arr = np.asarray(_parse_csv_rows(text), dtype=float)
    else:
        doc = json.loads(text)
        if not isinstance(doc, dict) or "rows" not in doc:
            raise ShapeMismatch(f"{path}: expected a JSON object with a 'rows' field")
        arr = np.asarray(doc["rows"], dtype=float)
        if "d" in doc and int(doc["d"]) != arr.shape[0]:
            raise ShapeMismatch(
                f"{path}: declared d={doc['d']} but got {arr.shape[0]} rows",
                declared=int(doc["d"]),
                actual=int(arr.shape[0]),
            )
    if arr.ndim != 2:
        raise ShapeMismatch(f"{path}: expected a matrix, got shape {arr.shape}")
    return arr


def load_matrix(path: PathLike) -> StochasticMatrix:
    """Read and validate a stochastic matrix."""
    return validate_stochastic(load_array(path))


def load_vector(path: PathLike) -> np.ndarray:
    """Read a vector from JSON (a plain list or ``{"probs": [...]}``) or a
    one-line CSV."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        rows = _parse_csv_rows(text)
        if len(rows) != 1:
            raise ShapeMismatch(f"{path}: expected a single CSV row, got {len(rows)}")
        return np.asarray(rows[0], dtype=float)
    doc = json.loads(text)
    if isinstance(doc, dict):
        doc = doc.get("probs", doc.get("values"))
    arr = np.asarray(doc, dtype=float)
    if arr.ndim != 1:
        raise ShapeMismatch(f"{path}: expected a vector, got shape {arr.shape}")
    return arr


def curve_to_csv(header: list[str], rows: list[list]) -> str:
    """Render grid/curve data as CSV text with lossless floats."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
    return buf.getvalue()
