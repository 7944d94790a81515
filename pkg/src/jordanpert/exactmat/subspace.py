"""Subspaces of K^m in canonical form.

A subspace is stored as the nonzero rows of the reduced row-echelon form of
any spanning set.  Read as columns this is the reduced column-echelon basis
matrix, and it is unique, so equality of subspaces is equality of bases.
"""

from __future__ import annotations

from .elimination import _null_from_echelon, nullspace_vectors, rref_rows
from .fields import Field
from .matrix import Matrix, unit_vector


class Subspace:
    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: Field, ambient: int, basis: tuple, pivots: tuple):
        # use Subspace.span unless basis is already canonical
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, field: Field, ambient: int, vectors) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        if any(len(v) != ambient for v in vectors):
            raise ValueError(f"vectors must have length {ambient}")
        if not vectors:
            return cls.zero(field, ambient)
        rows, pivots = rref_rows(field, vectors, ambient)
        return cls(field, ambient, tuple(rows), tuple(pivots))

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        basis = tuple(unit_vector(field, ambient, i) for i in range(ambient))
        return cls(field, ambient, basis, tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def matrix(self) -> Matrix:
        """The ``ambient x dim`` basis matrix in reduced column-echelon form."""
        return Matrix.from_columns(self.field, self.basis, self.ambient)

    def reduce(self, x) -> tuple:
        """Remainder of ``x`` after clearing the pivot coordinates."""
        red = self.field.reduce
        x = list(x)
        for b, p in zip(self.basis, self.pivots):
            c = x[p]
            if c:
                x = [red(xi - c * bi) for xi, bi in zip(x, b)]
        return tuple(x)

    def __contains__(self, x) -> bool:
        if len(x) != self.ambient:
            raise ValueError(f"vector of length {len(x)} in K^{self.ambient}")
        return not any(self.reduce(x))

    def annihilator(self) -> list[tuple]:
        """Row vectors ``c`` with ``c . w = 0`` for all ``w`` here; ``self`` is their common kernel."""
        return _null_from_echelon(self.field, self.basis, self.pivots, self.ambient)

    def _check(self, other: "Subspace"):
        if not isinstance(other, Subspace):
            raise TypeError(f"expected a Subspace, got {type(other).__name__}")
        if other.field != self.field or other.ambient != self.ambient:
            raise ValueError(
                f"subspaces live in different spaces: {self.field}^{self.ambient} "
                f"vs {other.field}^{other.ambient}"
            )

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not other.basis:
            return self
        if not self.basis:
            return other
        return Subspace.span(self.field, self.ambient, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == self.ambient:
            return other
        if other.dim == other.ambient:
            return self
        rows = self.annihilator() + other.annihilator()
        return Subspace.span(self.field, self.ambient, nullspace_vectors(self.field, rows, self.ambient))

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(b in other for b in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.ambient, self.basis))

    def __repr__(self):
        fmt = self.field.format
        vecs = ", ".join("(" + ", ".join(fmt(a) for a in b) + ")" for b in self.basis)
        return f"Subspace({self.field!r}^{self.ambient}, dim={self.dim}, [{vecs}])"


def kernel_basis(A: Matrix) -> Subspace:
    """``{x : A x = 0}`` as a canonical subspace of K^cols."""
    if A.rows == 0:
        return Subspace.full(A.field, A.cols)
    vectors = nullspace_vectors(A.field, A.data, A.cols)
    return Subspace.span(A.field, A.cols, vectors)


def preimage(A: Matrix, W: Subspace) -> Subspace:
    """``{x : A x in W}``."""
    if W.ambient != A.rows or W.field != A.field:
        raise ValueError(
            f"target subspace of {W.field}^{W.ambient} does not match a {A.shape} matrix over {A.field}"
        )
    constraints = W.annihilator()
    if not constraints:
        return Subspace.full(A.field, A.cols)
    CA = Matrix.from_rows(A.field, constraints, A.rows) @ A
    return kernel_basis(CA)


def image(A: Matrix, U: Subspace | None = None) -> Subspace:
    """``A U`` (the column space when ``U`` is omitted)."""
    if U is None:
        return Subspace.span(A.field, A.rows, A.columns())
    return Subspace.span(A.field, A.rows, [A.apply(b) for b in U.basis])


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    return U + W


def subspace_intersect(U: Subspace, W: Subspace) -> Subspace:
    return U & W


def contains(U: Subspace, x) -> bool:
    return tuple(x) in U


def quotient_dim(U: Subspace, W: Subspace) -> int:
    """``dim U/W`` for nested ``W <= U``; raises ``ValueError`` otherwise."""
    if not W <= U:
        raise ValueError("quotient_dim needs W contained in U")
    return U.dim - W.dim


def independent_modulo(vectors, W: Subspace) -> bool:
    """Whether the classes ``v + W`` are linearly independent in K^m / W."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return True
    residues = [W.reduce(v) for v in vectors]
    _, pivots = rref_rows(W.field, residues, W.ambient)
    return len(pivots) == len(vectors)
