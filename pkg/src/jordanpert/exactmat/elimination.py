"""Row reduction over Q and GF(p).

Over Q the rows are first scaled to integers and reduced with a
fraction-free Gauss-Jordan (Bareiss) sweep, so every intermediate entry is a
minor of the scaled input.  One exact division per entry at the end yields
the reduced row-echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .fields import PrimeField, Rationals
from .matrix import Matrix


def _bareiss_rref(a: list[list[int]], ncols: int) -> tuple[int, list[int]]:
    """Fraction-free Gauss-Jordan in place; returns (common pivot value, pivots).

    On return the first ``len(pivots)`` rows hold the echelon rows, scaled so
    that every pivot equals the returned value; remaining rows are zero.
    """
    nrows = len(a)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if a[i][c]:
                break
        else:
            continue
        if i != r:
            a[r], a[i] = a[i], a[r]
        prow = a[r]
        d = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            if f:
                a[i] = [(d * x - f * y) // prev for x, y in zip(row, prow)]
            elif prev != d:
                a[i] = [d * x // prev for x in row]
        prev = d
        pivots.append(c)
        r += 1
    return prev, pivots


def _rref_rows_q(rows, ncols: int):
    ints = []
    for row in rows:
        den = lcm(*(x.denominator for x in row)) if row else 1
        ints.append([x.numerator * (den // x.denominator) for x in row])
    d, pivots = _bareiss_rref(ints, ncols)
    out = []
    for row in ints[: len(pivots)]:
        out.append(tuple(Fraction(x, d) if x else Fraction(0) for x in row))
    return out, pivots


def _rref_rows_gf(rows, ncols: int, p: int):
    a = [list(row) for row in rows]
    nrows = len(a)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if a[i][c]:
                break
        else:
            continue
        if i != r:
            a[r], a[i] = a[i], a[r]
        inv = pow(a[r][c], -1, p)
        prow = a[r] = [x * inv % p for x in a[r]]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in a[: len(pivots)]], pivots


def rref_rows(field, rows, ncols: int) -> tuple[list[tuple], list[int]]:
    """Reduced echelon rows (nonzero ones only) and pivot columns of ``rows``."""
    if isinstance(field, Rationals):
        return _rref_rows_q(rows, ncols)
    if isinstance(field, PrimeField):
        return _rref_rows_gf(rows, ncols, field.p)
    raise TypeError(f"unsupported field {field!r}")


def rref(M: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row-echelon form ``(R, rank, pivots)`` of ``M``.

    >>> from .fields import QQ
    >>> R, r, piv = rref(Matrix(QQ, [[2, 4], [1, 2]]))
    >>> R, r, piv
    (Matrix(QQ, [[1, 2], [0, 0]]), 1, (0,))
    """
    rows, pivots = rref_rows(M.field, M.data, M.cols)
    z = (M.field.zero,) * M.cols
    data = tuple(rows) + (z,) * (M.rows - len(rows))
    return Matrix._raw(M.field, data, M.rows, M.cols), len(pivots), tuple(pivots)


def rank(M: Matrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    rows = M.data if M.rows <= M.cols else M.T.data
    ncols = M.cols if M.rows <= M.cols else M.rows
    return len(rref_rows(M.field, rows, ncols)[1])


def nullspace_vectors(field, rows, ncols: int) -> list[tuple]:
    """A basis of ``{x : r . x = 0 for every r in rows}`` (one vector per free column)."""
    echelon, pivots = rref_rows(field, rows, ncols)
    return _null_from_echelon(field, echelon, pivots, ncols)


def _null_from_echelon(field, echelon, pivots, ncols: int) -> list[tuple]:
    pivot_set = set(pivots)
    zero, one = field.zero, field.one
    red = field.reduce
    out = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(echelon, pivots):
            if row[f]:
                v[pc] = red(-row[f])
        out.append(tuple(v))
    return out
