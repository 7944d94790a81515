"""Exact scalars, dense matrices and the subspace lattice."""

from .charpoly import char_poly, eigenvalue_multiplicities, poly_eval, rational_eigenvalues
from .elimination import rank, rref
from .fields import GF, QQ, Field, PrimeField, Rationals, field_from_name
from .io import (
    MatrixFormatError,
    dump_matrix,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    vector_from_json,
    vector_to_json,
)
from .matrix import Matrix, direct_sum, unit_vector, zero_vector
from .subspace import (
    Subspace,
    contains,
    image,
    independent_modulo,
    kernel_basis,
    preimage,
    quotient_dim,
    subspace_intersect,
    subspace_sum,
)

__all__ = [
    "Field", "GF", "QQ", "PrimeField", "Rationals", "field_from_name",
    "Matrix", "direct_sum", "unit_vector", "zero_vector",
    "rref", "rank",
    "Subspace", "kernel_basis", "preimage", "image", "subspace_sum", "subspace_intersect",
    "contains", "quotient_dim", "independent_modulo",
    "char_poly", "poly_eval", "rational_eigenvalues", "eigenvalue_multiplicities",
    "MatrixFormatError", "matrix_to_json", "matrix_from_json", "load_matrix", "dump_matrix",
    "vector_to_json", "vector_from_json",
]
