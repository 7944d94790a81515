"""Exact scalar fields: the rationals and prime fields GF(p).

Elements are plain Python values so that dense kernels can use the native
operators: ``Fraction`` for Q (always in lowest terms, positive denominator)
and ``int`` in ``[0, p)`` for GF(p).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


class Field:
    """Common interface of the supported fields."""

    name = ""
    characteristic = 0

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        raise NotImplementedError

    def reduce(self, x):
        """Canonicalize the result of native ``+``/``*`` on elements."""
        return x

    def inv(self, a):
        raise NotImplementedError

    def parse(self, text: str):
        """Parse a decimal ``"a"`` or ``"a/b"`` string exactly."""
        if not isinstance(text, str):
            raise ValueError(f"expected a rational string, got {text!r}")
        match = _RATIONAL_RE.match(text)
        if match is None:
            raise ValueError(f"malformed rational {text!r}")
        num = int(match.group(1))
        den = int(match.group(2)) if match.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return self(Fraction(num, den))

    def format(self, a) -> str:
        return str(a)

    def to_json(self) -> dict:
        raise NotImplementedError


class Rationals(Field):
    name = "Q"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, bool) or isinstance(x, float):
            raise TypeError(f"refusing inexact or boolean value {x!r}")
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"

    def to_json(self) -> dict:
        return {"field": "Q"}


class PrimeField(Field):
    name = "GF"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"GF(p) needs a prime modulus, got {p!r}")
        self.p = p
        self.characteristic = p

    def __call__(self, x):
        p = self.p
        if isinstance(x, bool) or isinstance(x, float):
            raise TypeError(f"refusing inexact or boolean value {x!r}")
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into GF({p})")

    def parse(self, text: str):
        try:
            return super().parse(text)
        except ZeroDivisionError as exc:
            raise ValueError(str(exc)) from None

    def reduce(self, x):
        return x % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def to_json(self) -> dict:
        return {"field": "GF", "p": self.p}


def _is_prime(p) -> bool:
    if isinstance(p, bool) or not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    from sympy import isprime

    return bool(isprime(p))


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str, p: int | None = None) -> Field:
    if name == "Q":
        return QQ
    if name == "GF":
        if p is None:
            raise ValueError("GF field needs a modulus p")
        return GF(p)
    raise ValueError(f"unknown field {name!r}")
