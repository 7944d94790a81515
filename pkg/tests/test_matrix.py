from fractions import Fraction

import pytest
from hypothesis import given

from jordanpert.exactmat import GF, QQ, Matrix, direct_sum, unit_vector
from oracles import matmul
from strategies import int_rows


def test_construction_and_shape():
    A = Matrix(QQ, [[1, 2, 3], [4, 5, 6]])
    assert A.shape == (2, 3)
    assert A.data[1][2] == 6
    assert isinstance(A.data[0][0], Fraction)
    assert Matrix(QQ, [], 0, 3).shape == (0, 3)


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        Matrix(QQ, [[1, 2], [3]])


def test_immutability_and_hash():
    A = Matrix(QQ, [[1, 2], [3, 4]])
    B = Matrix(QQ, [["1", "2"], ["3", "4"]])
    assert A == B and hash(A) == hash(B)
    with pytest.raises(AttributeError):
        A.rows = 5


def test_arithmetic():
    A = Matrix(QQ, [[1, 2], [3, 4]])
    I = Matrix.identity(QQ, 2)
    assert A @ I == A
    assert A - A == Matrix.zeros(QQ, 2)
    assert A.shift(1) == A - I
    assert A ** 0 == I and A ** 3 == A @ A @ A
    assert A.T == Matrix(QQ, [[1, 3], [2, 4]])
    assert A.apply((1, 1)) == (3, 7)
    assert A.scale(Fraction(1, 2)).data[0][0] == Fraction(1, 2)


def test_shape_errors():
    A = Matrix(QQ, [[1, 2, 3]])
    with pytest.raises(ValueError):
        A @ A
    with pytest.raises(ValueError):
        A + Matrix(QQ, [[1, 2]])


def test_field_mismatch_rejected():
    with pytest.raises(ValueError):
        Matrix(QQ, [[1]]) + Matrix(GF(5), [[1]])


def test_gf_entries_reduced():
    A = Matrix(GF(3), [[4, -1], [2, 5]])
    assert A.data == ((1, 2), (2, 2))
    assert (A @ A).data == ((2, 0), (0, 2))


def test_direct_sum_and_units():
    A = direct_sum(Matrix(QQ, [[1]]), Matrix(QQ, [[2, 3], [4, 5]]))
    assert A.data == ((1, 0, 0), (0, 2, 3), (0, 4, 5))
    assert unit_vector(QQ, 3, 1) == (0, 1, 0)


@given(int_rows(3, 4), int_rows(4, 2))
def test_matmul_matches_oracle(a, b):
    assert (Matrix(QQ, a, 3, 4) @ Matrix(QQ, b, 4, 2)).data == tuple(map(tuple, matmul(a, b)))
