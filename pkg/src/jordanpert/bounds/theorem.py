"""Executable forms of the perturbation bounds.

With ``k = rank(S - T)``, ``w_n = dim ker (X - lam)^n`` and
``q_n = w_{n+1} - w_n``:

* theorem (i):   ``|w_n(S) - w_n(T)| <= k n``
* theorem (ii):  ``|q_n(S) - q_n(T)| <= k``
* root bound (i):  ``|dim L(S) - w_p(T)| <= k p`` with ``p`` the longest chain of ``S``
* root bound (ii): ``|dim L(S) - dim L(T)| <= k max(p, q)``
* Savchenko bound: ``dim L(S) - (n_1 + ... + n_k) <= dim L(T)`` when ``S`` has
  at least ``k`` chains of lengths ``n_1 >= n_2 >= ...``

Violations are returned as report content, never raised.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..exactmat import Matrix, matrix_to_json, rank
from ..jordan import WeyrCharacteristic, segre_from_weyr, weyr


def _check_pair(S: Matrix, T: Matrix):
    if not (S.is_square and T.is_square) or S.shape != T.shape:
        raise ValueError(f"need square matrices of one shape, got {S.shape} and {T.shape}")
    if S.field != T.field:
        raise ValueError(f"field mismatch: {S.field} vs {T.field}")


def _weyr_pair(S, T, lam, n_cap, weyr_S, weyr_T):
    if weyr_S is None:
        weyr_S = weyr(S, lam, n_cap)
    if weyr_T is None:
        weyr_T = weyr(T, lam, n_cap)
    return weyr_S, weyr_T


@dataclass(frozen=True)
class BoundRecord:
    n: int
    w_S: int
    w_T: int
    q_S: int
    q_T: int
    bound_i: int
    bound_ii: int

    @property
    def gap_i(self) -> int:
        return abs(self.w_S - self.w_T)

    @property
    def gap_ii(self) -> int:
        return abs(self.q_S - self.q_T)

    @property
    def pass_i(self) -> bool:
        return self.gap_i <= self.bound_i

    @property
    def pass_ii(self) -> bool:
        return self.gap_ii <= self.bound_ii

    @property
    def sharp_i(self) -> bool:
        return self.n >= 1 and self.gap_i == self.bound_i

    @property
    def sharp_ii(self) -> bool:
        return self.gap_ii == self.bound_ii

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "w_S": self.w_S,
            "w_T": self.w_T,
            "q_S": self.q_S,
            "q_T": self.q_T,
            "bound_i": self.bound_i,
            "bound_ii": self.bound_ii,
            "gap_i": self.gap_i,
            "gap_ii": self.gap_ii,
            "pass_i": self.pass_i,
            "pass_ii": self.pass_ii,
            "sharp_i": self.sharp_i,
            "sharp_ii": self.sharp_ii,
        }


@dataclass(frozen=True)
class BoundReport:
    """Per-``n`` audit of both theorem items for one ``lam``.

    ``records[n]`` covers ``n = 0 .. n_max``: item (i) is meaningful for
    ``n >= 1`` (it is ``0 <= 0`` at ``n = 0``) and item (ii) uses ``q_0 = w_1``.
    """

    lam: object
    k: int
    n_max: int
    records: tuple
    S: Matrix
    T: Matrix

    @property
    def violations(self) -> tuple:
        return tuple(r for r in self.records if not (r.pass_i and r.pass_ii))

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self, include_inputs: bool | None = None) -> dict:
        field = self.S.field
        out = {
            "check": "theorem",
            "labels": {"gap_i": "Theorem (i)", "gap_ii": "Theorem (ii)"},
            "lambda": field.format(self.lam),
            "k_effective": self.k,
            "n_max": self.n_max,
            "passed": self.passed,
            "records": [r.to_dict() for r in self.records],
        }
        if include_inputs is None:
            include_inputs = not self.passed
        if include_inputs:
            out["S"] = matrix_to_json(self.S)
            out["T"] = matrix_to_json(self.T)
        return out


def check_main_bounds(
    S: Matrix,
    T: Matrix,
    lam,
    n_max: int | None = None,
    *,
    k: int | None = None,
    weyr_S: WeyrCharacteristic | None = None,
    weyr_T: WeyrCharacteristic | None = None,
) -> BoundReport:
    """Audit theorem items (i)/(ii) for ``n = 0..n_max`` (default ``n_max = m``).

    ``k`` and the Weyr sequences may be passed in when already computed;
    they must be stabilized or extend to ``n_max + 1``.
    """
    _check_pair(S, T)
    lam = S.field(lam)
    m = S.rows
    if n_max is None:
        n_max = m
    if k is None:
        k = rank(S - T)
    weyr_S, weyr_T = _weyr_pair(S, T, lam, max(m, n_max + 1), weyr_S, weyr_T)
    records = []
    for n in range(n_max + 1):
        records.append(
            BoundRecord(
                n,
                weyr_S.at(n),
                weyr_T.at(n),
                weyr_S.increment(n),
                weyr_T.increment(n),
                k * n,
                k,
            )
        )
    return BoundReport(lam, k, n_max, tuple(records), S, T)


@dataclass(frozen=True)
class RootBoundReport:
    lam: object
    k: int
    p: int  # longest chain of S
    q: int  # longest chain of T
    dim_L_S: int
    dim_L_T: int
    dim_ker_T_p: int

    @property
    def bound_i(self) -> int:
        return self.k * self.p

    @property
    def gap_i(self) -> int:
        return abs(self.dim_L_S - self.dim_ker_T_p)

    @property
    def bound_ii(self) -> int:
        return self.k * max(self.p, self.q)

    @property
    def gap_ii(self) -> int:
        return abs(self.dim_L_S - self.dim_L_T)

    @property
    def pass_i(self) -> bool:
        return self.gap_i <= self.bound_i

    @property
    def pass_ii(self) -> bool:
        return self.gap_ii <= self.bound_ii

    @property
    def passed(self) -> bool:
        return self.pass_i and self.pass_ii

    @property
    def sharp_i(self) -> bool:
        return self.gap_i == self.bound_i

    @property
    def sharp_ii(self) -> bool:
        return self.gap_ii == self.bound_ii

    def to_dict(self, field) -> dict:
        return {
            "check": "root",
            "labels": {"gap_i": "root bound (i)", "gap_ii": "root bound (ii)"},
            "lambda": field.format(self.lam),
            "k_effective": self.k,
            "p": self.p,
            "q": self.q,
            "dim_L_S": self.dim_L_S,
            "dim_L_T": self.dim_L_T,
            "dim_ker_T_p": self.dim_ker_T_p,
            "bound_i": self.bound_i,
            "gap_i": self.gap_i,
            "bound_ii": self.bound_ii,
            "gap_ii": self.gap_ii,
            "pass_i": self.pass_i,
            "pass_ii": self.pass_ii,
            "sharp_i": self.sharp_i,
            "sharp_ii": self.sharp_ii,
        }


def check_root_bounds(
    S: Matrix,
    T: Matrix,
    lam,
    *,
    k: int | None = None,
    weyr_S: WeyrCharacteristic | None = None,
    weyr_T: WeyrCharacteristic | None = None,
) -> RootBoundReport:
    _check_pair(S, T)
    lam = S.field(lam)
    if k is None:
        k = rank(S - T)
    weyr_S, weyr_T = _weyr_pair(S, T, lam, S.rows, weyr_S, weyr_T)
    p, q = weyr_S.index, weyr_T.index
    return RootBoundReport(lam, k, p, q, weyr_S.total, weyr_T.total, weyr_T.at(p))


SKIPPED_K_GT_L = "hypothesis k <= l not met"


@dataclass(frozen=True)
class SavchenkoReport:
    lam: object
    k: int
    parts_S: tuple
    dim_L_S: int
    dim_L_T: int
    status: str  # "checked" or SKIPPED_K_GT_L

    @property
    def l(self) -> int:
        return len(self.parts_S)

    @property
    def lhs(self) -> int | None:
        if self.status != "checked":
            return None
        return self.dim_L_S - sum(self.parts_S[: self.k])

    @property
    def passed(self) -> bool:
        return self.status != "checked" or self.lhs <= self.dim_L_T

    @property
    def equality(self) -> bool:
        return self.status == "checked" and self.lhs == self.dim_L_T

    def to_dict(self, field) -> dict:
        return {
            "check": "savchenko",
            "label": "Savchenko bound",
            "lambda": field.format(self.lam),
            "k_effective": self.k,
            "l": self.l,
            "segre_S": list(self.parts_S),
            "status": self.status,
            "lhs": self.lhs,
            "dim_L_T": self.dim_L_T,
            "passed": self.passed,
            "equality": self.equality,
        }


def check_savchenko(
    S: Matrix,
    T: Matrix,
    lam,
    *,
    k: int | None = None,
    weyr_S: WeyrCharacteristic | None = None,
    weyr_T: WeyrCharacteristic | None = None,
) -> SavchenkoReport:
    _check_pair(S, T)
    lam = S.field(lam)
    if k is None:
        k = rank(S - T)
    weyr_S, weyr_T = _weyr_pair(S, T, lam, S.rows, weyr_S, weyr_T)
    parts = segre_from_weyr(weyr_S).parts
    status = "checked" if k <= len(parts) else SKIPPED_K_GT_L
    return SavchenkoReport(lam, k, parts, weyr_S.total, weyr_T.total, status)
