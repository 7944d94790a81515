import random

from hypothesis import given, settings
from hypothesis import strategies as st

from jordanpert.exactmat import GF, QQ, Matrix, rank, rref
from oracles import minor_rank, naive_rref
from strategies import PRIMES, int_rows, matrices


def test_identity():
    I = Matrix.identity(QQ, 3)
    assert rref(I) == (I, 3, (0, 1, 2))


def test_proportional_rows():
    R, r, piv = rref(Matrix(QQ, [[2, 4], [1, 2]]))
    assert R == Matrix(QQ, [[1, 2], [0, 0]])
    assert (r, piv) == (1, (0,))


def test_empty_matrices():
    assert rank(Matrix(QQ, [], 0, 0)) == 0
    assert rank(Matrix(QQ, [], 0, 4)) == 0
    assert rref(Matrix(QQ, [[], []], 2, 0))[1] == 0


def test_rank_matches_minor_oracle_6x6():
    rng = random.Random(6)
    for trial in range(40):
        r = rng.randint(0, 6)
        X = [[rng.randint(-3, 3) for _ in range(r)] for _ in range(6)]
        Y = [[rng.randint(-3, 3) for _ in range(6)] for _ in range(r)]
        rows = [[sum(X[i][t] * Y[t][j] for t in range(r)) for j in range(6)] for i in range(6)]
        assert rank(Matrix(QQ, rows, 6, 6)) == minor_rank(rows)


def test_gf_rank_matches_minor_oracle():
    rng = random.Random(7)
    for trial in range(60):
        p = rng.choice(PRIMES)
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(m)]
        assert rank(Matrix(GF(p), rows, m, n)) == minor_rank(rows, p)


@given(st.integers(0, 6), st.integers(0, 6), st.data())
def test_rref_matches_naive_gauss_jordan(m, n, data):
    rows = data.draw(int_rows(m, n, bound=5))
    R, r, piv = rref(Matrix(QQ, rows, m, n))
    expected, exp_piv = naive_rref(rows) if m else ([], [])
    assert R.data == tuple(map(tuple, expected)) if m else R.rows == 0
    assert piv == tuple(exp_piv) and r == len(exp_piv)


@given(matrices())
def test_rref_idempotent(A):
    R, r, piv = rref(A)
    assert rref(R) == (R, r, piv)


@given(matrices())
def test_rank_of_transpose(A):
    assert rank(A) == rank(A.T)


@settings(max_examples=60)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_gf_and_q_rank_agree_for_most_primes(m, n, data):
    rows = data.draw(int_rows(m, n, bound=4))
    rq = rank(Matrix(QQ, rows, m, n))
    # rank mod p can only drop; 101*103*107 exceeds the Hadamard bound 6^3 * 4^6,
    # so some nonzero maximal minor survives modulo one of the primes
    ranks = [rank(Matrix(GF(p), rows, m, n)) for p in (101, 103, 107)]
    assert all(r <= rq for r in ranks)
    assert max(ranks) == rq
