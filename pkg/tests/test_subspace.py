import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jordanpert.exactmat import (
    GF,
    QQ,
    Matrix,
    Subspace,
    contains,
    image,
    independent_modulo,
    kernel_basis,
    preimage,
    quotient_dim,
    rank,
    subspace_intersect,
    subspace_sum,
    unit_vector,
)
from jordanpert.perturb import upper_shift
from strategies import fields, int_rows, vector_sets


def span(F, m, *idx):
    return Subspace.span(F, m, [unit_vector(F, m, i) for i in idx])


def test_kernel_of_upper_shift():
    assert kernel_basis(upper_shift(QQ, 5)) == span(QQ, 5, 0)


def test_kernel_of_identity_is_zero():
    assert kernel_basis(Matrix.identity(QQ, 4)).dim == 0


def test_kernel_equal_rows():
    K = kernel_basis(Matrix(QQ, [[1, 1], [1, 1]]))
    assert K == Subspace.span(QQ, 2, [(1, -1)])
    assert K.basis == ((1, -1),)


def test_preimage_examples():
    A = upper_shift(QQ, 5)
    assert preimage(A, Subspace.full(QQ, 5)) == Subspace.full(QQ, 5)
    assert preimage(A, Subspace.zero(QQ, 5)) == kernel_basis(A)
    assert preimage(A, span(QQ, 5, 0)) == span(QQ, 5, 0, 1)


def test_preimage_dimension_mismatch():
    with pytest.raises(ValueError):
        preimage(upper_shift(QQ, 3), Subspace.zero(QQ, 4))


def test_quotient_dim_examples():
    U, W = span(QQ, 4, 0, 1), span(QQ, 4, 0)
    assert quotient_dim(U, W) == 1
    assert quotient_dim(U, U) == 0
    with pytest.raises(ValueError):
        quotient_dim(W, span(QQ, 4, 2))


def test_canonical_form_is_unique():
    a = Subspace.span(QQ, 3, [(1, 2, 3), (4, 5, 6)])
    b = Subspace.span(QQ, 3, [(5, 7, 9), (3, 3, 3), (1, 2, 3)])
    assert a == b and a.basis == b.basis
    assert a.matrix().shape == (3, 2)


def test_mixed_spaces_rejected():
    with pytest.raises(ValueError):
        span(QQ, 3, 0) + span(QQ, 4, 0)
    with pytest.raises(ValueError):
        span(QQ, 3, 0) & span(GF(3), 3, 0)


@st.composite
def triples(draw):
    F = draw(fields())
    m = draw(st.integers(0, 8))
    return F, m, [Subspace.span(F, m, draw(vector_sets(F, m))) for _ in range(3)]


@settings(max_examples=80)
@given(triples())
def test_lattice_laws(t):
    F, m, (U, V, W) = t
    assert U + V == V + U and U & V == V & U
    assert (U + V) + W == U + (V + W)
    assert (U & V) & W == U & (V & W)
    assert U + U == U and U & U == U
    assert (U + V).dim + (U & V).dim == U.dim + V.dim
    assert U & V <= U <= U + V
    # absorption
    assert U + (U & V) == U and U & (U + V) == U


@settings(max_examples=80)
@given(triples())
def test_annihilator_cuts_out_subspace(t):
    F, m, (U, _, _) = t
    ann = U.annihilator()
    assert len(ann) == m - U.dim
    for c in ann:
        for b in U.basis:
            assert F.reduce(sum(x * y for x, y in zip(c, b))) == 0


@given(fields(), st.integers(1, 6), st.data())
def test_kernel_contract(F, n, data):
    m = data.draw(st.integers(0, 6))
    A = Matrix(F, data.draw(int_rows(m, n)), m, n)
    K = kernel_basis(A)
    assert rank(A) + K.dim == n
    for b in K.basis:
        assert not any(A.apply(b))


@given(fields(), st.integers(1, 6), st.data())
def test_preimage_contract(F, m, data):
    A = Matrix(F, data.draw(int_rows(m, m)), m, m)
    W1 = Subspace.span(F, m, data.draw(vector_sets(F, m)))
    W2 = W1 + Subspace.span(F, m, data.draw(vector_sets(F, m, max_count=2)))
    P1, P2 = preimage(A, W1), preimage(A, W2)
    assert kernel_basis(A) <= P1 <= P2
    for b in P1.basis:
        assert A.apply(b) in W1
    assert image(A, P1) <= W1


@given(fields(), st.integers(1, 6), st.data())
def test_nested_quotient(F, m, data):
    W = Subspace.span(F, m, data.draw(vector_sets(F, m)))
    v = tuple(F(a) for a in data.draw(int_rows(1, m))[0])
    U = W + Subspace.span(F, m, [v])
    assert quotient_dim(U, W) == (0 if contains(W, v) else 1)
    assert independent_modulo([v], W) == (not contains(W, v))


def test_sum_and_intersect_functions():
    U, W = span(QQ, 3, 0, 1), span(QQ, 3, 1, 2)
    assert subspace_sum(U, W) == Subspace.full(QQ, 3)
    assert subspace_intersect(U, W) == span(QQ, 3, 1)
