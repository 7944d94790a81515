"""Jordan structure of total and partial operators at a single eigenvalue.

A partial operator is a square matrix acting on a domain subspace ``D``.
Kernel powers follow the iterate-in-domain rule::

    K_0 = {0},   K_{j+1} = D  intersect  (A - lam)^{-1} K_j

so ``x`` lies in ``K_n`` exactly when ``x, (A-lam)x, ..., (A-lam)^{n-1} x``
all lie in ``D`` and ``(A-lam)^n x = 0``.  For ``D = K^m`` this is the usual
null space of ``(A - lam)^n``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactmat import Matrix, Subspace, independent_modulo, preimage, rank
from .exactmat.matrix import is_zero, vec_sub


class DomainError(ValueError):
    """A vector was fed to a partial operator outside its domain."""

    def __init__(self, message: str, vector=None):
        super().__init__(message)
        self.vector = vector


@dataclass(frozen=True)
class PartialOperator:
    matrix: Matrix
    domain: Subspace

    def __post_init__(self):
        A, D = self.matrix, self.domain
        if not A.is_square:
            raise ValueError(f"operator matrix must be square, got {A.shape}")
        if D.field != A.field or D.ambient != A.rows:
            raise ValueError("domain is not a subspace of the operator's space")

    @classmethod
    def total(cls, A: Matrix) -> "PartialOperator":
        return cls(A, Subspace.full(A.field, A.rows))

    @property
    def field(self):
        return self.matrix.field

    @property
    def dim(self) -> int:
        return self.matrix.rows

    @property
    def is_total(self) -> bool:
        return self.domain.dim == self.dim

    def apply(self, x) -> tuple:
        x = tuple(self.field(a) for a in x)
        if x not in self.domain:
            raise DomainError(f"vector {x} is outside the operator domain", x)
        return self.matrix.apply(x)


def as_operator(op) -> PartialOperator:
    if isinstance(op, PartialOperator):
        return op
    if isinstance(op, Matrix):
        return PartialOperator.total(op)
    raise TypeError(f"expected a Matrix or PartialOperator, got {type(op).__name__}")


def kernel_chain(op, lam, n_max: int) -> tuple[list[Subspace], bool]:
    """``[K_0, K_1, ...]`` up to ``n_max`` or until the chain stops growing.

    The second value tells whether stabilization was observed; in that case
    ``K_n`` equals the last entry for every larger ``n``.
    """
    op = as_operator(op)
    D = op.domain
    N = op.matrix.shift(lam)
    K = [Subspace.zero(op.field, op.dim)]
    if D.dim == 0:
        return K, True
    for _ in range(n_max):
        nxt = preimage(N, K[-1])
        if not op.is_total:
            nxt = D & nxt
        if nxt == K[-1]:
            return K, True
        K.append(nxt)
        if nxt.dim == D.dim:
            return K, True
    return K, False


def kernel_power(op, lam, n: int) -> Subspace:
    """``ker (op - lam)^n`` in the partial-operator sense."""
    if n < 0:
        raise ValueError("kernel power needs n >= 0")
    K, _ = kernel_chain(op, lam, n)
    return K[min(n, len(K) - 1)]


@dataclass(frozen=True)
class WeyrCharacteristic:
    """Kernel-power dimensions ``w_1, w_2, ...`` at ``lam``.

    When ``stabilized`` is set, ``dims`` stops at the stabilization index
    (so ``dims`` is empty if ``lam`` is not an eigenvalue) and :meth:`at`
    extends the sequence by its last value.
    """

    lam: object
    dims: tuple
    stabilized: bool

    def at(self, n: int) -> int:
        if n < 0:
            raise ValueError("n must be non-negative")
        if n == 0:
            return 0
        if n <= len(self.dims):
            return self.dims[n - 1]
        if not self.stabilized:
            raise ValueError(f"w_{n} lies beyond the computed, unstabilized range")
        return self.dims[-1] if self.dims else 0

    @property
    def index(self) -> int:
        """Stabilization index (the maximal Jordan chain length)."""
        if not self.stabilized:
            raise ValueError("sequence did not stabilize within the cap")
        return len(self.dims)

    @property
    def total(self) -> int:
        """Stabilized value, i.e. the root-subspace dimension."""
        return self.at(len(self.dims) + 1) if self.stabilized else self.dims[-1]

    def increment(self, n: int) -> int:
        """``w_{n+1} - w_n``: the dimension of ``ker^{n+1} / ker^n``."""
        return self.at(n + 1) - self.at(n)

    def increments(self) -> tuple:
        return tuple(self.increment(n) for n in range(len(self.dims)))

    def values(self, n_max: int) -> tuple:
        return tuple(self.at(n) for n in range(1, n_max + 1))


def weyr(op, lam, n_max: int | None = None) -> WeyrCharacteristic:
    op = as_operator(op)
    lam = op.field(lam)
    if n_max is None:
        n_max = op.dim
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    K, stabilized = kernel_chain(op, lam, n_max)
    return WeyrCharacteristic(lam, tuple(k.dim for k in K[1:]), stabilized)


def weyr_oracle(A: Matrix, lam, n_max: int | None = None) -> WeyrCharacteristic:
    """Brute-force Weyr sequence ``m - rank((A - lam)^n)`` from explicit powers."""
    if not A.is_square:
        raise ValueError("weyr_oracle needs a square matrix")
    lam = A.field(lam)
    m = A.rows
    if n_max is None:
        n_max = m
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if m == 0:
        return WeyrCharacteristic(lam, (), True)
    N = A.shift(lam)
    power = Matrix.identity(A.field, m)
    dims: list[int] = []
    for _ in range(n_max):
        power = power @ N
        w = m - rank(power)
        if w == (dims[-1] if dims else 0):
            return WeyrCharacteristic(lam, tuple(dims), True)
        dims.append(w)
        if w == m:
            return WeyrCharacteristic(lam, tuple(dims), True)
    return WeyrCharacteristic(lam, tuple(dims), False)


def conjugate_partition(parts) -> tuple:
    """Conjugate of a partition given as a non-increasing sequence."""
    parts = [p for p in parts if p > 0]
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= i) for i in range(1, parts[0] + 1))


@dataclass(frozen=True)
class SegreCharacteristic:
    lam: object
    parts: tuple
    truncated: bool = False

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)


def segre_from_weyr(w: WeyrCharacteristic) -> SegreCharacteristic:
    return SegreCharacteristic(w.lam, conjugate_partition(w.increments()), not w.stabilized)


def segre(op, lam, n_max: int | None = None) -> SegreCharacteristic:
    """Jordan chain lengths at ``lam``; ``truncated`` if the cap was hit first."""
    return segre_from_weyr(weyr(op, lam, n_max))


def root_subspace(op, lam) -> Subspace:
    op = as_operator(op)
    K, _ = kernel_chain(op, lam, op.dim)
    return K[-1]


@dataclass(frozen=True)
class JordanChainSet:
    """Chains ``(x_0, ..., x_{n-1})`` with ``(A-lam) x_0 = 0``, ``(A-lam) x_i = x_{i-1}``."""

    lam: object
    chains: tuple

    @property
    def lengths(self) -> tuple:
        return tuple(sorted((len(c) for c in self.chains), reverse=True))

    def count_at_least(self, n: int) -> int:
        return sum(1 for c in self.chains if len(c) >= n)

    def __len__(self):
        return len(self.chains)

    def __iter__(self):
        return iter(self.chains)


def jordan_chains(A, lam) -> JordanChainSet:
    """A maximal independent family of Jordan chains realizing the Segre partition.

    Works top-down: at each level ``j`` the vectors inherited from longer
    chains are completed to a basis of ``ker^j`` modulo ``ker^{j-1}`` by
    scanning the canonical basis of ``ker^j`` left to right, then every
    active chain is pushed one level down by ``A - lam``.
    """
    op = as_operator(A)
    if not op.is_total:
        raise ValueError("jordan_chains needs a total operator")
    A = op.matrix
    lam = A.field(lam)
    K, _ = kernel_chain(op, lam, A.rows)
    N = A.shift(lam)
    chains: list[list[tuple]] = []  # each built top-down
    for level in range(len(K) - 1, 0, -1):
        span = K[level - 1] + Subspace.span(A.field, A.rows, [c[-1] for c in chains])
        for b in K[level].basis:
            if b not in span:
                span = span + Subspace.span(A.field, A.rows, [b])
                chains.append([b])
        if level > 1:
            for c in chains:
                c.append(N.apply(c[-1]))
    return JordanChainSet(lam, tuple(tuple(reversed(c)) for c in chains))


@dataclass(frozen=True)
class ChainDiagnostics:
    ok: bool
    condition: str | None = None
    chain: int | None = None
    position: int | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok

    def to_dict(self, field=None) -> dict:
        witness = self.witness
        if witness is not None and field is not None:
            witness = [field.format(a) for a in witness]
        return {
            "ok": self.ok,
            "condition": self.condition,
            "chain": self.chain,
            "position": self.position,
            "witness": witness,
        }


def chain_verify(op, lam, chains) -> ChainDiagnostics:
    """Check chain relations, domain membership and independence; report the first failure.

    Independence is tested level by level: the ``n``-th vectors of all chains
    longer than ``n`` must stay independent modulo ``ker (A-lam)^n``.
    """
    op = as_operator(op)
    field = op.field
    lam = field(lam)
    N = op.matrix.shift(lam)
    if isinstance(chains, JordanChainSet):
        chains = chains.chains
    chains = [tuple(tuple(field(a) for a in x) for x in c) for c in chains]
    for ci, chain in enumerate(chains):
        for pos, x in enumerate(chain):
            if len(x) != op.dim:
                return ChainDiagnostics(False, "dimension mismatch", ci, pos, x)
            if x not in op.domain:
                return ChainDiagnostics(False, "domain violated", ci, pos, x)
            image = N.apply(x)
            expected = chain[pos - 1] if pos else (field.zero,) * op.dim
            if image != expected:
                return ChainDiagnostics(False, "chain relation violated", ci, pos, vec_sub(field, image, expected))
        for pos, x in enumerate(chain):
            if is_zero(x):
                return ChainDiagnostics(False, "zero vector", ci, pos, x)
    longest = max((len(c) for c in chains), default=0)
    K, _ = kernel_chain(op, lam, longest)
    for n in range(longest):
        level = [(ci, c[n]) for ci, c in enumerate(chains) if len(c) > n]
        Kn = K[min(n, len(K) - 1)]
        if not independent_modulo([v for _, v in level], Kn):
            # name the first chain whose vector is dependent on the earlier ones
            for t in range(1, len(level) + 1):
                if not independent_modulo([v for _, v in level[:t]], Kn):
                    ci, v = level[t - 1]
                    return ChainDiagnostics(False, "independence violated", ci, n, v)
    return ChainDiagnostics(True)
