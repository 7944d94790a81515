from hypothesis import given, settings
from hypothesis import strategies as st

from jordanpert.bounds import check_main_bounds, check_root_bounds, check_savchenko
from jordanpert.bounds.theorem import SKIPPED_K_GT_L
from jordanpert.exactmat import GF, QQ, Matrix
from jordanpert.perturb import random_operator, random_perturbation, sharp_example, truncated_shift_example


def test_sharp_pair_gaps():
    A, B = sharp_example(5)
    rep = check_main_bounds(A, B, 0)
    assert rep.k == 1 and rep.n_max == 5 and rep.passed
    for r in rep.records[:5]:
        assert r.gap_ii == 1 and r.sharp_ii
    assert [r.gap_i for r in rep.records] == [0, 1, 2, 3, 4, 5]
    assert all(r.sharp_i for r in rep.records[1:])
    d = rep.to_dict()
    assert d["labels"] == {"gap_i": "Theorem (i)", "gap_ii": "Theorem (ii)"}
    assert "S" not in d


def test_equal_operators_have_zero_gaps():
    S = random_operator(5, 3)
    rep = check_main_bounds(S, S, 1)
    assert rep.k == 0 and all(r.gap_i == r.gap_ii == 0 for r in rep.records)
    root = check_root_bounds(S, S, 1)
    assert root.dim_L_S == root.dim_L_T and root.passed
    sav = check_savchenko(S, S, 1)
    assert sav.status == "checked" and sav.lhs == sav.dim_L_S and sav.passed


def test_root_bounds_sharp_pair():
    A, B = sharp_example(5)
    r = check_root_bounds(A, B, 0)
    assert (r.dim_L_S, r.p, r.dim_ker_T_p, r.k) == (5, 5, 0, 1)
    assert r.gap_i == r.bound_i == 5 and r.sharp_i and r.passed


def test_savchenko_sharp_pair_equality():
    A, B = sharp_example(5)
    s = check_savchenko(A, B, 0)
    assert s.parts_S == (5,) and s.lhs == 0 == s.dim_L_T
    assert s.passed and s.equality
    assert s.to_dict(QQ)["label"] == "Savchenko bound"


def test_savchenko_skipped_when_k_exceeds_l():
    A, B = sharp_example(3)
    s = check_savchenko(A, B, 1)
    assert s.k == 1 and s.l == 0 and s.status == SKIPPED_K_GT_L and s.passed


def test_savchenko_truncated_shift_slack():
    slack = []
    for N in (3, 5, 8):
        S, T = truncated_shift_example(N)
        s = check_savchenko(S, T, 0)
        assert s.status == "checked" and s.passed and s.lhs < s.dim_L_T
        slack.append(s.dim_L_T - s.lhs)
    assert slack == sorted(slack) and slack[0] < slack[-1]


def test_violation_serializes_inputs():
    # fabricate an impossible pair of Weyr sequences to exercise the failure path
    from jordanpert.jordan import WeyrCharacteristic

    S = Matrix.identity(QQ, 3)
    rep = check_main_bounds(
        S, S, 1, k=0,
        weyr_S=WeyrCharacteristic(1, (3,), True),
        weyr_T=WeyrCharacteristic(1, (1,), True),
    )
    assert not rep.passed and rep.violations
    d = rep.to_dict()
    assert d["S"]["entries"][0] == ["1", "0", "0"] and "T" in d


@st.composite
def pairs(draw):
    p = draw(st.sampled_from([None, 2, 5]))
    F = QQ if p is None else GF(p)
    m = draw(st.integers(1, 7))
    k = draw(st.integers(0, min(3, m)))
    S = random_operator(m, draw(st.integers(0, 2**32)), 2, F)
    T = random_perturbation(m, k, draw(st.integers(0, 2**32)), 2, F).apply(S)
    lam = F(draw(st.sampled_from([0, 1, -1])))
    return S, T, lam


@settings(max_examples=120, deadline=None)
@given(pairs())
def test_bounds_hold_and_are_symmetric(case):
    S, T, lam = case
    a, b = check_main_bounds(S, T, lam), check_main_bounds(T, S, lam)
    assert a.passed and b.passed
    assert [(r.gap_i, r.gap_ii) for r in a.records] == [(r.gap_i, r.gap_ii) for r in b.records]
    assert check_root_bounds(S, T, lam).passed
    assert check_savchenko(S, T, lam).passed
