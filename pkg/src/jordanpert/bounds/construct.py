"""Constructive transfer of Jordan-chain classes across a rank-one perturbation.

Given ``rank(S - T) = 1`` and tops ``x_1, ..., x_m`` whose classes are
independent in ``ker T^{n+1} / ker T^n`` (after shifting both operators by
``lam``), build ``z_1, ..., z_{m-1}`` whose classes are independent in
``ker S^{n+1} / ker S^n``.  The chain tails are ``x_{k,j} = T^{n-j} x_k``
and ``M = ker(S - T)`` has codimension one; every correction coefficient
comes from a single linear functional ``phi`` with ``ker phi = M``.

If every chain vector already lies in ``M`` the chains are returned as
they are, since ``S`` and ``T`` act identically on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..exactmat import Matrix, rank
from ..exactmat.matrix import axpy, dot, is_zero
from ..jordan import chain_verify


class ConstructionError(ValueError):
    pass


class RankError(ConstructionError):
    """``rank(S - T) != 1``."""


class DependentClassesError(ConstructionError):
    """Input tops are not independent classes in ``ker T^{n+1} / ker T^n``."""


@dataclass(frozen=True)
class Certificate:
    case: str  # "Mchain", "I", "II" or "III"
    n: int
    lam: object
    h: int | None
    pivot: int | None  # input index of the chain moved last
    order: tuple  # input indices in processing order
    alphas: tuple  # per output vector: {level j: alpha_{k,j}}
    z_in_M: tuple
    annihilated: tuple  # S^{n+1} z_k == 0
    images: tuple  # S^n z_k
    images_independent: bool
    chains_ok: bool
    notes: tuple = dc_field(default=())

    @property
    def verified(self) -> bool:
        return (
            all(self.z_in_M)
            and all(self.annihilated)
            and self.images_independent
            and self.chains_ok
        )

    def to_dict(self, field) -> dict:
        fmt = field.format
        return {
            "case": self.case,
            "n": self.n,
            "lambda": fmt(self.lam),
            "h": self.h,
            "pivot": self.pivot,
            "order": list(self.order),
            "alphas": [{str(j): fmt(a) for j, a in sorted(al.items())} for al in self.alphas],
            "z_in_M": list(self.z_in_M),
            "annihilated": list(self.annihilated),
            "images": [[fmt(a) for a in v] for v in self.images],
            "images_independent": self.images_independent,
            "chains_ok": self.chains_ok,
            "verified": self.verified,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class Construction:
    z: tuple
    chains: tuple  # Jordan chains of S at lam ending in each z
    certificate: Certificate


def _independent(field, vectors, ambient: int) -> bool:
    if not vectors:
        return True
    return rank(Matrix.from_rows(field, vectors, ambient)) == len(vectors)


def proof_construct_rank_one(S: Matrix, T: Matrix, lam, n: int, tops) -> Construction:
    if S.shape != T.shape or not S.is_square or S.field != T.field:
        raise ValueError("need square matrices of one shape over one field")
    if n < 0:
        raise ValueError("n must be non-negative")
    F = S.field
    dim = S.rows
    lam = F(lam)
    K = S - T
    if rank(K) != 1:
        raise RankError(f"rank(S - T) = {rank(K)}, need 1")
    S0, T0 = S.shift(lam), T.shift(lam)
    phi = next(row for row in K.data if any(row))

    tops = [tuple(F(a) for a in x) for x in tops]
    if not tops:
        raise DependentClassesError("no input classes given")
    if any(len(x) != dim for x in tops):
        raise ValueError(f"tops must have length {dim}")
    Tn = T0 ** n
    for i, x in enumerate(tops):
        if not is_zero(T0.apply(Tn.apply(x))):
            raise DependentClassesError(f"top {i} is not in ker T^{n + 1}")
    if not _independent(F, [Tn.apply(x) for x in tops], dim):
        raise DependentClassesError("top classes are dependent modulo ker T^n")

    # x[k][j] = T^{n-j} x_k
    x = []
    for top in tops:
        tail = [top]
        for _ in range(n):
            tail.append(T0.apply(tail[-1]))
        x.append(tail[::-1])

    def defect(v):
        return dot(F, phi, v)

    outside = [(j, k) for k in range(len(x)) for j in range(n + 1) if defect(x[k][j])]
    if not outside:
        return _certify(S0, phi, F, lam, n, "Mchain", None, None, tuple(range(len(x))),
                        [x[k][n] for k in range(len(x))], [{} for _ in x], ())

    h, pivot = min(outside)
    order = tuple(k for k in range(len(x)) if k != pivot) + (pivot,)
    xm = x[pivot]
    others = [x[k] for k in order[:-1]]
    dm = defect(xm[h])

    def alpha(v):
        return F.reduce(defect(v) * F.inv(dm))

    def minus(v, a, u):
        return axpy(F, F.reduce(-a), u, v)

    zs, alphas = [], []
    notes: list[str] = []
    if h == n:
        case = "I"
        for xk in others:
            a = alpha(xk[n])
            zs.append(minus(xk[n], a, xm[n]))
            alphas.append({n: a})
    elif h == n - 1:
        case = "II"
        for xk in others:
            a1 = alpha(xk[n - 1])
            v = minus(xk[n - 1], a1, xm[n - 1])
            w = minus(xk[n], a1, xm[n])
            if T0.apply(w) != v or defect(v):
                notes.append("intermediate v/w relation failed")
            a2 = alpha(w)
            zs.append(minus(w, a2, xm[n - 1]))
            alphas.append({n - 1: a1, n: a2})
    else:
        case = "III"
        for xk in others:
            a = {h: alpha(xk[h])}
            v = minus(xk[h], a[h], xm[h])
            w = minus(xk[h + 1], a[h], xm[h + 1])
            if T0.apply(w) != v or defect(v):
                notes.append(f"intermediate relation failed at j={h}")
            for j in range(h + 1, n):
                a[j] = alpha(w)
                v = minus(w, a[j], xm[h])
                w = xk[j + 1]
                for i in range(j - h + 1):
                    w = minus(w, a[h + i], xm[j - i + 1])
                if T0.apply(w) != v or defect(v):
                    notes.append(f"intermediate relation failed at j={j}")
            a[n] = alpha(w)
            zs.append(minus(w, a[n], xm[h]))
            alphas.append(a)
    return _certify(S0, phi, F, lam, n, case, h, pivot, order, zs, alphas, tuple(notes))


def _certify(S0, phi, F, lam, n, case, h, pivot, order, zs, alphas, notes) -> Construction:
    dim = S0.rows
    Sn = S0 ** n
    images = [Sn.apply(z) for z in zs]
    annihilated = tuple(is_zero(S0.apply(v)) for v in images)
    chains = []
    for z in zs:
        c = [z]
        for _ in range(n):
            c.append(S0.apply(c[-1]))
        chains.append(tuple(reversed(c)))
    chains_ok = bool(chain_verify(S0, 0, chains)) if chains else True
    cert = Certificate(
        case=case,
        n=n,
        lam=lam,
        h=h,
        pivot=pivot,
        order=order,
        alphas=tuple(alphas),
        z_in_M=tuple(not dot(F, phi, z) for z in zs),
        annihilated=annihilated,
        images=tuple(images),
        images_independent=_independent(F, images, dim),
        chains_ok=chains_ok,
        notes=notes,
    )
    return Construction(tuple(zs), tuple(chains), cert)
