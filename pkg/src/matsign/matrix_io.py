"""Matrix literals: CSV (one row per line, comma separated) and JSON ``{"rows", "cols", "data"}``."""

import csv
import io
import json

import numpy as np

from .errors import ParseError
from .linalg import as_matrix


def parse_csv(text):
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise ParseError("empty matrix")
    width = len(rows[0])
    for k, r in enumerate(rows):
        if len(r) != width:
            raise ParseError(f"row {k} has {len(r)} entries, expected {width}")
    try:
        data = [[float(c) for c in r] for r in rows]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return _finish(data)


def parse_json(text):
    try:
        doc = json.loads(text)
        rows, cols, data = int(doc["rows"]), int(doc["cols"]), doc["data"]
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad JSON matrix: {exc}") from None
    if len(data) != rows or any(len(r) != cols for r in data):
        raise ParseError(f"data does not have shape ({rows}, {cols})")
    try:
        return _finish([[float(v) for v in r] for r in data])
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from None


def _finish(data):
    m = np.array(data, dtype=float)
    if m.ndim != 2 or m.size == 0:
        raise ParseError("matrix must have at least one row and one column")
    if not np.all(np.isfinite(m)):
        raise ParseError("matrix entries must be finite")
    return as_matrix(m)


def parse_matrix(text):
    """JSON if the text starts with ``{``, CSV otherwise."""
    return parse_json(text) if text.lstrip().startswith("{") else parse_csv(text)


def load_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def to_csv(a):
    return "\n".join(",".join(repr(float(v)) for v in row) for row in np.asarray(a)) + "\n"


def to_json(a):
    a = np.asarray(a, dtype=float)
    return json.dumps({"rows": a.shape[0], "cols": a.shape[1], "data": a.tolist()})
