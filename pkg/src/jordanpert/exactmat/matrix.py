"""Immutable dense matrices over an exact field.

Vectors are plain tuples of field elements.
"""

from __future__ import annotations

from .fields import QQ, Field  # noqa: F401  (QQ is used by the doctests)


class Matrix:
    """A dense ``rows x cols`` matrix with value semantics.

    >>> A = Matrix(QQ, [[1, 2], [3, 4]])
    >>> A @ A
    Matrix(QQ, [[7, 10], [15, 22]])
    """

    __slots__ = ("field", "rows", "cols", "_data", "_hash")

    def __init__(self, field: Field, data, rows: int | None = None, cols: int | None = None):
        data = [[field(x) for x in row] for row in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ValueError(f"entries do not form a {rows}x{cols} array")
        self._set(field, tuple(tuple(row) for row in data), rows, cols)

    def _set(self, field, data, rows, cols):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, field, data, rows, cols) -> "Matrix":
        # data must already be a tuple of tuples of canonical elements
        self = object.__new__(cls)
        self._set(field, data, rows, cols)
        return self

    # -- construction -------------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        z = field.zero
        return cls._raw(field, tuple((z,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        data = tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        return cls._raw(field, data, n, n)

    @classmethod
    def diag(cls, field: Field, values) -> "Matrix":
        values = [field(v) for v in values]
        n = len(values)
        z = field.zero
        data = tuple(tuple(values[i] if i == j else z for j in range(n)) for i in range(n))
        return cls._raw(field, data, n, n)

    @classmethod
    def from_columns(cls, field: Field, columns, rows: int) -> "Matrix":
        columns = [tuple(field(x) for x in c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise ValueError("column length mismatch")
        data = tuple(tuple(c[i] for c in columns) for i in range(rows))
        return cls._raw(field, data, rows, len(columns))

    @classmethod
    def from_rows(cls, field: Field, vectors, cols: int) -> "Matrix":
        data = tuple(tuple(field(x) for x in v) for v in vectors)
        if any(len(v) != cols for v in data):
            raise ValueError("row length mismatch")
        return cls._raw(field, data, len(data), cols)

    # -- access --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def data(self) -> tuple:
        return self._data

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self._data)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list]:
        return [list(row) for row in self._data]

    # -- arithmetic ----------------------------------------------------------

    def _check_same(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return None

    def __add__(self, other):
        bad = self._check_same(other)
        if bad is not None:
            return bad
        red = self.field.reduce
        data = tuple(
            tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data)
        )
        return Matrix._raw(self.field, data, self.rows, self.cols)

    def __sub__(self, other):
        bad = self._check_same(other)
        if bad is not None:
            return bad
        red = self.field.reduce
        data = tuple(
            tuple(red(a - b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data)
        )
        return Matrix._raw(self.field, data, self.rows, self.cols)

    def __neg__(self):
        red = self.field.reduce
        data = tuple(tuple(red(-a) for a in r) for r in self._data)
        return Matrix._raw(self.field, data, self.rows, self.cols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        red = self.field.reduce
        data = tuple(tuple(red(c * a) for a in r) for r in self._data)
        return Matrix._raw(self.field, data, self.rows, self.cols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            red = self.field.reduce
            zero = self.field.zero
            ocols = tuple(zip(*other._data)) if other.rows else ((),) * other.cols
            data = tuple(
                tuple(red(sum((a * b for a, b in zip(r, c)), zero)) for c in ocols)
                for r in self._data
            )
            return Matrix._raw(self.field, data, self.rows, other.cols)
        if isinstance(other, (tuple, list)):
            return self.apply(other)
        return NotImplemented

    def apply(self, x) -> tuple:
        if len(x) != self.cols:
            raise ValueError(f"vector of length {len(x)} for a {self.shape} matrix")
        red = self.field.reduce
        zero = self.field.zero
        return tuple(red(sum((a * b for a, b in zip(r, x)), zero)) for r in self._data)

    def shift(self, lam) -> "Matrix":
        """``A - lam * I``."""
        if not self.is_square:
            raise ValueError("shift needs a square matrix")
        lam = self.field(lam)
        if lam == 0:
            return self
        red = self.field.reduce
        data = tuple(
            tuple(red(a - lam) if i == j else a for j, a in enumerate(r))
            for i, r in enumerate(self._data)
        )
        return Matrix._raw(self.field, data, self.rows, self.cols)

    def __pow__(self, n: int) -> "Matrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = Matrix.identity(self.field, self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    @property
    def T(self) -> "Matrix":
        data = tuple(zip(*self._data)) if self.rows else ((),) * self.cols
        return Matrix._raw(self.field, tuple(tuple(r) for r in data), self.cols, self.rows)

    def rank(self) -> int:
        from .elimination import rank

        return rank(self)

    def map_field(self, field: Field) -> "Matrix":
        """Re-read the entries in another field (e.g. reduce integers mod p)."""
        return Matrix(field, self._data, self.rows, self.cols)

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self._data == other._data
        )

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field, self.shape, self._data)))
        return self._hash

    def __repr__(self):
        fmt = self.field.format
        body = ", ".join("[" + ", ".join(fmt(a) for a in r) + "]" for r in self._data)
        return f"Matrix({self.field!r}, [{body}])"


def direct_sum(*blocks: Matrix) -> Matrix:
    """Block-diagonal matrix ``blocks[0] (+) blocks[1] (+) ...``."""
    if not blocks:
        raise ValueError("direct_sum needs at least one block")
    field = blocks[0].field
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [[field.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        if b.field != field:
            raise ValueError("direct_sum of matrices over different fields")
        for i, row in enumerate(b.data):
            data[r0 + i][c0:c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    return Matrix._raw(field, tuple(tuple(r) for r in data), rows, cols)


# -- vector helpers ----------------------------------------------------------


def unit_vector(field: Field, m: int, i: int) -> tuple:
    z, o = field.zero, field.one
    return tuple(o if j == i else z for j in range(m))


def zero_vector(field: Field, m: int) -> tuple:
    return (field.zero,) * m


def is_zero(x) -> bool:
    return not any(x)


def vec_add(field: Field, x, y) -> tuple:
    red = field.reduce
    return tuple(red(a + b) for a, b in zip(x, y))


def vec_sub(field: Field, x, y) -> tuple:
    red = field.reduce
    return tuple(red(a - b) for a, b in zip(x, y))


def vec_scale(field: Field, c, x) -> tuple:
    red = field.reduce
    return tuple(red(c * a) for a in x)


def axpy(field: Field, c, x, y) -> tuple:
    """``y + c * x``."""
    red = field.reduce
    return tuple(red(b + c * a) for a, b in zip(x, y))


def dot(field: Field, x, y):
    return field.reduce(sum((a * b for a, b in zip(x, y)), field.zero))


def as_vector(field: Field, x) -> tuple:
    return tuple(field(a) for a in x)
