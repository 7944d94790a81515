"""JSON matrix files.

Format::

    {"field": "Q" | "GF", "p": <prime, GF only>, "rows": m, "cols": n,
     "entries": [["a", "a/b", ...], ...]}

Entries are decimal strings; floats are refused everywhere.
"""

from __future__ import annotations

import json
from pathlib import Path

from .fields import Field, field_from_name
from .matrix import Matrix


class MatrixFormatError(ValueError):
    """Malformed matrix or vector document."""


def field_from_json(obj: dict) -> Field:
    name = obj.get("field")
    if name not in ("Q", "GF"):
        raise MatrixFormatError(f"field must be 'Q' or 'GF', got {name!r}")
    p = obj.get("p")
    if name == "GF" and (isinstance(p, bool) or not isinstance(p, int)):
        raise MatrixFormatError("GF matrices need an integer 'p'")
    try:
        return field_from_name(name, p)
    except ValueError as exc:
        raise MatrixFormatError(str(exc)) from None


def _parse_entry(field: Field, text):
    if not isinstance(text, str):
        raise MatrixFormatError(f"entries must be strings, got {text!r}")
    try:
        return field.parse(text)
    except ValueError as exc:
        raise MatrixFormatError(str(exc)) from None


def matrix_to_json(A: Matrix) -> dict:
    out = A.field.to_json()
    out["rows"] = A.rows
    out["cols"] = A.cols
    out["entries"] = [[A.field.format(x) for x in row] for row in A.data]
    return out


def matrix_from_json(obj, field: Field | None = None) -> Matrix:
    if not isinstance(obj, dict):
        raise MatrixFormatError("matrix document must be a JSON object")
    file_field = field_from_json(obj)
    if field is not None and field != file_field:
        raise MatrixFormatError(f"expected a matrix over {field}, file is over {file_field}")
    rows, cols, entries = obj.get("rows"), obj.get("cols"), obj.get("entries")
    for name, v in (("rows", rows), ("cols", cols)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise MatrixFormatError(f"{name!r} must be a non-negative integer")
    if not isinstance(entries, list) or len(entries) != rows:
        raise MatrixFormatError(f"'entries' must be a list of {rows} rows")
    data = []
    for row in entries:
        if not isinstance(row, list) or len(row) != cols:
            raise MatrixFormatError(f"every row must have {cols} entries")
        data.append(tuple(_parse_entry(file_field, x) for x in row))
    return Matrix._raw(file_field, tuple(data), rows, cols)


def vector_to_json(field: Field, x) -> list[str]:
    return [field.format(a) for a in x]


def vector_from_json(field: Field, obj, length: int | None = None) -> tuple:
    if not isinstance(obj, list):
        raise MatrixFormatError("vector must be a JSON list")
    if length is not None and len(obj) != length:
        raise MatrixFormatError(f"vector must have {length} entries")
    return tuple(_parse_entry(field, x) for x in obj)


def load_matrix(path, field: Field | None = None) -> Matrix:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path}: invalid JSON ({exc})") from None
    return matrix_from_json(obj, field)


def dump_matrix(A: Matrix, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(A), indent=1) + "\n", encoding="utf-8")
