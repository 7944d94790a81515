"""Characteristic polynomials and eigenvalues that live in the base field."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .fields import PrimeField, Rationals
from .matrix import Matrix


def _faddeev_leverrier(B: list[list[int]], n: int) -> list[int]:
    """Characteristic coefficients of an integer matrix, highest degree first.

    Uses ``P_k = B M_k`` with ``M_k = P_{k-1} + c_{k-1} I``, so each step costs
    one product; the divisions by ``k`` are exact over the integers.
    """
    c = [1]
    P = [[0] * n for _ in range(n)]  # B M_0 with M_0 = 0
    for k in range(1, n + 1):
        # M_k = P + c_{k-1} I
        M = [row[:] for row in P]
        for i in range(n):
            M[i][i] += c[-1]
        Mcols = list(zip(*M))
        P = [[sum(a * b for a, b in zip(B[i], Mcols[j])) for j in range(n)] for i in range(n)]
        trace = sum(P[i][i] for i in range(n))
        c.append(-trace // k)
    return c


def char_poly(A: Matrix) -> list:
    """Coefficients of ``det(x I - A)``, highest degree first (monic).

    Over Q the matrix is scaled to ``B = D A`` with integer entries and the
    coefficients are rescaled by powers of ``D``.  Over GF(p) the canonical
    integer lift is expanded and reduced mod p.
    """
    if not A.is_square:
        raise ValueError("char_poly needs a square matrix")
    n = A.rows
    if isinstance(A.field, Rationals):
        den = lcm(*(x.denominator for row in A.data for x in row)) if n else 1
        B = [[int(x * den) for x in row] for row in A.data]
        coeffs = _faddeev_leverrier(B, n)
        return [Fraction(c, den ** k) for k, c in enumerate(coeffs)]
    coeffs = _faddeev_leverrier([list(r) for r in A.data], n)
    return [A.field(c) for c in coeffs]


def poly_eval(field, coeffs, x):
    acc = field.zero
    for c in coeffs:
        acc = field.reduce(acc * x + c)
    return acc


def _synthetic_div(field, coeffs, r):
    """Divide by ``(x - r)``; returns (quotient, remainder)."""
    out = []
    acc = field.zero
    for c in coeffs:
        acc = field.reduce(acc * r + c)
        out.append(acc)
    return out[:-1], out[-1]


def _primitive_integer(coeffs) -> list[int]:
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return [a // g for a in ints] if g else ints


def _rational_root_candidates(ints: list[int]):
    from sympy import divisors

    lead, const = ints[0], ints[-1]
    nums = divisors(abs(const))
    dens = divisors(abs(lead))
    seen = set()
    for q in dens:
        for p in nums:
            for s in (p, -p):
                r = Fraction(s, q)
                if r not in seen:
                    seen.add(r)
                    yield r


def eigenvalue_multiplicities(A: Matrix) -> tuple[dict, int]:
    """Map field eigenvalue -> algebraic multiplicity, plus the leftover degree.

    The leftover degree counts eigenvalues outside the base field (irrational
    or complex over Q, or in extensions of GF(p)); they are present but not
    supported by the rest of the library.
    """
    coeffs = char_poly(A)
    field = A.field
    found: dict = {}
    if isinstance(field, Rationals):
        poly = list(coeffs)
        while len(poly) > 1 and poly[-1] == 0:
            poly.pop()
            found[Fraction(0)] = found.get(Fraction(0), 0) + 1
        if len(poly) > 1:
            for r in _rational_root_candidates(_primitive_integer(poly)):
                while len(poly) > 1:
                    q, rem = _synthetic_div(field, poly, r)
                    if rem != 0:
                        break
                    poly = q
                    found[r] = found.get(r, 0) + 1
                if len(poly) == 1:
                    break
        return dict(sorted(found.items())), len(poly) - 1
    if isinstance(field, PrimeField):
        poly = list(coeffs)
        for r in field.elements():
            while len(poly) > 1:
                q, rem = _synthetic_div(field, poly, r)
                if rem != 0:
                    break
                poly = q
                found[r] = found.get(r, 0) + 1
        return found, len(poly) - 1
    raise TypeError(f"unsupported field {field!r}")


def rational_eigenvalues(A: Matrix) -> frozenset:
    """Eigenvalues of ``A`` lying in its field (rational roots over Q)."""
    return frozenset(eigenvalue_multiplicities(A)[0])
