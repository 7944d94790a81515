"""Finite-rank perturbation models and the example families.

``T = S + U V`` with ``U`` of size ``m x k`` and ``V`` of size ``k x m``.  For
total matrices the common subspace on which ``S`` and ``T`` agree is taken to
be ``M = ker(S - T)``, the largest such subspace.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exactmat import QQ, Field, Matrix, Subspace, direct_sum, kernel_basis, rank, unit_vector
from .jordan import PartialOperator, kernel_chain, weyr


@dataclass(frozen=True)
class PerturbationSpec:
    k: int
    U: Matrix
    V: Matrix
    seed: int | None = None
    bound: int = 0

    @property
    def K(self) -> Matrix:
        return self.U @ self.V

    @property
    def rank(self) -> int:
        """Effective rank of the perturbation (used by the bounds, not ``k``)."""
        return rank(self.K)

    def apply(self, S: Matrix) -> Matrix:
        return S + self.K


def _randint_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def random_perturbation(m: int, k: int, seed: int, bound: int = 3, field: Field = QQ) -> PerturbationSpec:
    """Seeded factors with entries uniform in ``[-bound, bound]``."""
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got k={k}, m={m}")
    if bound < 1:
        raise ValueError("entry bound must be at least 1")
    rng = random.Random(seed)
    U = Matrix(field, _randint_matrix(rng, m, k, bound), m, k)
    V = Matrix(field, _randint_matrix(rng, k, m, bound), k, m)
    return PerturbationSpec(k, U, V, seed, bound)


def random_unimodular(rng: random.Random, m: int, field: Field = QQ, steps: int | None = None):
    """A random integer matrix of determinant 1 together with its inverse."""
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    Pinv = [row[:] for row in P]
    if m >= 2:
        for _ in range(steps if steps is not None else 2 * m):
            i, j = rng.sample(range(m), 2)
            c = rng.choice((-1, 1))
            # P <- P (I + c e_i e_j^T);  Pinv <- (I - c e_i e_j^T) Pinv
            for row in P:
                row[j] += c * row[i]
            Pinv[i] = [a - c * b for a, b in zip(Pinv[i], Pinv[j])]
    return Matrix(field, P, m, m), Matrix(field, Pinv, m, m)


def jordan_block(field: Field, size: int, lam=0) -> Matrix:
    lam = field(lam)
    return Matrix(
        field,
        [[lam if i == j else (1 if j == i + 1 else 0) for j in range(size)] for i in range(size)],
        size,
        size,
    )


def random_partition(rng: random.Random, total: int) -> list[int]:
    parts = []
    while total:
        p = rng.randint(1, total)
        parts.append(p)
        total -= p
    return sorted(parts, reverse=True)


FAMILIES = ("dense", "lowrank", "nilpotent", "jordan")


def random_operator(
    m: int, seed: int, bound: int = 3, field: Field = QQ, family: str | None = None
) -> Matrix:
    """A seeded test operator; the structured families have rich Jordan structure at small eigenvalues."""
    rng = random.Random(seed)
    if family is None:
        family = rng.choice(FAMILIES)
    if family == "dense":
        return Matrix(field, _randint_matrix(rng, m, m, bound), m, m)
    if family == "lowrank":
        r = rng.randint(0, max(m - 1, 0))
        X = Matrix(field, _randint_matrix(rng, m, r, bound), m, r)
        Y = Matrix(field, _randint_matrix(rng, r, m, bound), r, m)
        return X @ Y
    if family == "nilpotent":
        data = [[rng.randint(-bound, bound) if j > i else 0 for j in range(m)] for i in range(m)]
        P, Pinv = random_unimodular(rng, m, field, steps=m)
        return P @ Matrix(field, data, m, m) @ Pinv
    if family == "jordan":
        blocks = [
            jordan_block(field, size, rng.choice((0, 0, 1, -1, 2)))
            for size in random_partition(rng, m)
        ]
        J = direct_sum(*blocks) if blocks else Matrix.zeros(field, 0)
        P, Pinv = random_unimodular(rng, m, field, steps=m)
        return P @ J @ Pinv
    raise ValueError(f"unknown operator family {family!r}")


def complete_basis(M: Subspace, limit: int | None = None) -> list[tuple]:
    """Standard basis vectors extending ``M`` greedily, leftmost index first."""
    span = M
    out = []
    for i in range(M.ambient):
        if limit is not None and len(out) == limit:
            break
        e = unit_vector(M.field, M.ambient, i)
        if e not in span:
            out.append(e)
            span = span + Subspace.span(M.field, M.ambient, [e])
    return out


@dataclass(frozen=True)
class CommonDomainModel:
    """``dom S = M (+) span(s_completions)``, ``dom T = M (+) span(t_completions)``."""

    M: Subspace
    s_completions: tuple
    t_completions: tuple

    @property
    def k(self) -> int:
        return len(self.s_completions)

    @property
    def l(self) -> int:
        return len(self.t_completions)

    def s_domain(self) -> Subspace:
        return self.M + Subspace.span(self.M.field, self.M.ambient, self.s_completions)

    def t_domain(self) -> Subspace:
        return self.M + Subspace.span(self.M.field, self.M.ambient, self.t_completions)

    def is_direct(self) -> bool:
        return (
            self.s_domain().dim == self.M.dim + self.k
            and self.t_domain().dim == self.M.dim + self.l
        )

    def completions_disjoint(self) -> bool:
        """Whether ``span(s_completions)`` and ``span(t_completions)`` meet only in 0.

        False whenever the same completions serve both sides, as in
        :func:`common_subspace` with ``k > 0``; ``M`` is already maximal there.
        """
        F, m = self.M.field, self.M.ambient
        X = Subspace.span(F, m, self.s_completions)
        Y = Subspace.span(F, m, self.t_completions)
        return (X & Y).dim == 0

    def agree_on_M(self, S: Matrix, T: Matrix) -> bool:
        return all(S.apply(b) == T.apply(b) for b in self.M.basis)


def common_subspace(S: Matrix, T: Matrix) -> CommonDomainModel:
    if S.shape != T.shape or not S.is_square:
        raise ValueError(f"need square matrices of one shape, got {S.shape} and {T.shape}")
    M = kernel_basis(S - T)
    completions = tuple(complete_basis(M))
    return CommonDomainModel(M, completions, completions)


def restriction_chain(A: Matrix, M: Subspace, completions) -> list[PartialOperator]:
    """``[A_1, ..., A_k]`` with ``A_p`` the restriction of ``A`` to ``M (+) span(x_1..x_p)``."""
    completions = [tuple(A.field(a) for a in x) for x in completions]
    chain = []
    domain = M
    for p, x in enumerate(completions, start=1):
        domain = domain + Subspace.span(A.field, A.rows, [x])
        if domain.dim != M.dim + p:
            raise ValueError(f"completion {p} is dependent on M and the previous completions")
        chain.append(PartialOperator(A, domain))
    return chain


@dataclass(frozen=True)
class InterlacingRecord:
    p: int  # compares member p-1 against member p (1-based)
    n: int
    q_smaller: int  # dim ker^{n+1}/ker^n of the smaller-domain restriction
    q_larger: int
    lower_ok: bool
    upper_ok: bool


@dataclass(frozen=True)
class InterlacingReport:
    lam: object
    weyr: tuple  # per member, w_1..w_{n_max+1}
    records: tuple

    @property
    def violations(self) -> tuple:
        return tuple(r for r in self.records if not (r.lower_ok and r.upper_ok))

    @property
    def passed(self) -> bool:
        return not self.violations


def check_restriction_interlacing(chain, lam, n_max: int | None = None) -> InterlacingReport:
    """Check ``q_n(A_p) - 1 <= q_n(A_{p-1}) <= q_n(A_p)`` for consecutive members."""
    if not chain:
        return InterlacingReport(lam, (), ())
    lam = chain[0].field(lam)
    if n_max is None:
        n_max = chain[0].dim
    seqs = []
    for op in chain:
        w = weyr(op, lam, max(n_max + 1, op.dim))
        seqs.append(tuple(w.at(n) for n in range(n_max + 2)))
    records = []
    for p in range(1, len(chain)):
        small, large = seqs[p - 1], seqs[p]
        for n in range(n_max + 1):
            qs = small[n + 1] - small[n]
            ql = large[n + 1] - large[n]
            records.append(InterlacingRecord(p + 1, n, qs, ql, ql - 1 <= qs, qs <= ql))
    return InterlacingReport(lam, tuple(s[1:] for s in seqs), tuple(records))


# -- example families ---------------------------------------------------------


def upper_shift(field: Field, m: int) -> Matrix:
    return Matrix(field, [[1 if j == i + 1 else 0 for j in range(m)] for i in range(m)], m, m)


def cyclic_shift(field: Field, m: int) -> Matrix:
    return Matrix(field, [[1 if j == (i + 1) % m else 0 for j in range(m)] for i in range(m)], m, m)


def sharp_example(m: int, k: int = 1, field: Field = QQ) -> tuple[Matrix, Matrix]:
    """``k`` copies of the ``m x m`` upper shift and of the cyclic shift."""
    if m < 2 or k < 1:
        raise ValueError("sharp_example needs m >= 2 and k >= 1")
    A1, B1 = upper_shift(field, m), cyclic_shift(field, m)
    return direct_sum(*[A1] * k), direct_sum(*[B1] * k)


def truncated_shift_example(N: int, field: Field = QQ) -> tuple[Matrix, Matrix]:
    """Truncation of the paired shifts on the first ``N`` coordinates of each component.

    Coordinates are ordered ``(x_1..x_N, y_1..y_N)``; anything shifted past
    the cutoff is dropped.
    """
    if N < 2:
        raise ValueError("truncated_shift_example needs N >= 2")
    n = 2 * N
    S = [[0] * n for _ in range(n)]
    T = [[0] * n for _ in range(n)]
    for M in (S, T):
        for i in range(1, N):
            M[i][i - 1] = 1  # x-part: (., x_1, ..., x_{N-1})
        for i in range(N - 1):
            M[N + i][N + i + 1] = 1  # y-part: (y_2, ..., y_N, 0)
    S[0][N] = 1  # first x-coordinate picks up y_1
    return Matrix(field, S, n, n), Matrix(field, T, n, n)


@dataclass(frozen=True)
class PlantedPair:
    """Rank-one pair with known Jordan chains of ``T`` at ``lam``."""

    S: Matrix
    T: Matrix
    lam: object
    chains: tuple
    seed: int


def planted_rank_one_pair(
    seed: int, m_max: int = 7, field: Field = QQ, bound: int = 2
) -> PlantedPair:
    """Seeded ``T = P J P^{-1}`` and ``S = T + u v^T`` with ``J`` in Jordan form.

    About half the instances leave ``v`` zero outside the last Jordan block at
    ``lam``, so the other chains of ``T`` stay inside ``M = ker(S - T)``.
    """
    rng = random.Random(seed)
    m = rng.randint(2, m_max)
    lam = rng.choice((0, 0, 0, 1, -1))
    rest = rng.randint(0, m // 3)
    sizes = random_partition(rng, m - rest)
    blocks = [jordan_block(field, s, lam) for s in sizes]
    blocks += [jordan_block(field, 1, lam + rng.choice((1, 2, -2))) for _ in range(rest)]
    J = direct_sum(*blocks)
    while True:
        u = [rng.randint(-bound, bound) for _ in range(m)]
        if rng.random() < 0.5:
            start = sum(sizes[:-1])
            v = [0] * start + [rng.randint(-bound, bound) for _ in range(m - start)]
        else:
            v = [rng.randint(-bound, bound) for _ in range(m)]
        K = Matrix(field, [[a * b for b in v] for a in u], m, m)
        if rank(K) == 1:
            break
    P, Pinv = random_unimodular(rng, m, field, steps=rng.randint(0, 2 * m))
    T = P @ J @ Pinv
    S = P @ (J + K) @ Pinv
    chains = []
    offset = 0
    for s in sizes:
        chains.append(tuple(P.apply(unit_vector(field, m, offset + i)) for i in range(s)))
        offset += s
    return PlantedPair(S, T, field(lam), tuple(chains), seed)


def kernel_dims(A: Matrix, lam, upto: int) -> list[int]:
    """``[dim ker (A-lam)^p for p = 1..upto]`` (extended past stabilization)."""
    K, _ = kernel_chain(A, lam, upto)
    return [K[min(p, len(K) - 1)].dim for p in range(1, upto + 1)]
