"""Exact scalar arithmetic: rationals and prime fields.

Two scalar modes are supported.  The default mode is the field of
rational numbers with arbitrary-precision exact arithmetic; values are
`fractions.Fraction` instances, which are always stored in lowest terms
with positive denominator.  The secondary mode is the prime field F_p
for an odd prime p, used for cross-checking rank computations; values
are plain ints in [0, p).

A `Field` object carries the arithmetic; matrices and subspaces hold a
reference to their field.  Fields are stateless and safe to share
across threads.
"""

from __future__ import annotations

import random
from fractions import Fraction

import gmpy2


class FieldError(ValueError):
    pass


class Field:
    """Common interface for the two scalar modes."""

    name: str
    char: int

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def parse(self, obj):
        """Accept an int, a Fraction, or a string 'p/q' / 'n'."""
        raise NotImplementedError

    def format(self, v) -> str:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"
    char = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def parse(self, obj):
        if isinstance(obj, bool):
            raise FieldError("booleans are not scalars")
        if isinstance(obj, (int, Fraction)):
            return Fraction(obj)
        if isinstance(obj, str):
            try:
                return Fraction(obj)
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"bad rational literal {obj!r}") from exc
        raise FieldError(f"cannot interpret {obj!r} as a rational")

    def format(self, v) -> str:
        return str(v)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def invert(self, a):
        if a == 0:
            raise ZeroDivisionError("inverting zero")
        return 1 / a

    def is_zero(self, a) -> bool:
        return a == 0


class PrimeField(Field):
    def __init__(self, p: int):
        p = int(p)
        if p <= 2:
            raise FieldError("prime field mode requires p > 2")
        if not gmpy2.is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.char = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def parse(self, obj):
        if isinstance(obj, bool):
            raise FieldError("booleans are not scalars")
        if isinstance(obj, int):
            return obj % self.p
        if isinstance(obj, (str, Fraction)):
            q = Fraction(obj) if isinstance(obj, str) else obj
            den = q.denominator % self.p
            if den == 0:
                raise FieldError(f"denominator of {obj} vanishes mod {self.p}")
            return (q.numerator % self.p) * pow(den, -1, self.p) % self.p
        raise FieldError(f"cannot interpret {obj!r} mod {self.p}")

    def format(self, v) -> str:
        return str(v % self.p)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def invert(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverting zero")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0


QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def random_check_prime(seed: int | None = None) -> int:
    """A pseudo-random 60-bit prime, for modular rank cross-checks."""
    rng = random.Random(seed)
    lower = rng.getrandbits(60) | (1 << 59)
    return int(gmpy2.next_prime(lower))
