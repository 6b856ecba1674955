"""Exact ground fields: the rationals and prime fields F_p.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field
residues are :class:`GF` instances carrying their modulus.  Both support the
usual arithmetic operators, so the linear-algebra code is field-agnostic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction

from .errors import ParseError


class GF:
    """A residue modulo a prime ``p``, always stored in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise ValueError("mixing residues of F_%d and F_%d" % (self.p, other.p))
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return GF(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return GF(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return GF(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return GF(pow(self.v, -1, self.p), self.p) ** (-k)
        return GF(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return "GF(%d, %d)" % (self.v, self.p)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Either the rationals (``characteristic == 0``) or F_p."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError("F_p needs a prime modulus, got %d" % self.characteristic)

    @cached_property
    def zero(self):
        return self(0)

    @cached_property
    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce an int, Fraction, residue or ``"p/q"`` string into the field."""
        p = self.characteristic
        if isinstance(x, str):
            try:
                x = Fraction(x.strip())
            except ValueError:
                raise ParseError("not a scalar: %r" % x) from None
        if isinstance(x, bool):
            raise ParseError("not a scalar: %r" % x)
        if isinstance(x, GF):
            if p == 0 or x.p != p:
                raise ValueError("residue of F_%d does not belong to %s" % (x.p, self))
            return x
        if isinstance(x, float):
            raise ParseError("floats are not exact scalars: %r" % x)
        if p == 0:
            return Fraction(x)
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ParseError("%s has no image in F_%d" % (x, p))
        return GF(x.numerator * pow(x.denominator, -1, p), p)

    def format(self, x) -> str:
        if self.characteristic == 0:
            x = Fraction(x)
            if x.denominator == 1:
                return str(x.numerator)
            return "%d/%d" % (x.numerator, x.denominator)
        return str(int(self(x)))

    def random(self, rng: random.Random, bound: int = 5):
        if self.characteristic:
            return self(rng.randrange(self.characteristic))
        return Fraction(rng.randint(-bound, bound))

    def to_json(self):
        if self.characteristic == 0:
            return "Q"
        return {"Fp": self.characteristic}

    @classmethod
    def from_json(cls, doc) -> "Field":
        if doc == "Q":
            return QQ
        if isinstance(doc, dict) and set(doc) == {"Fp"} and isinstance(doc["Fp"], int):
            try:
                return cls(doc["Fp"])
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        raise ParseError("field must be \"Q\" or {\"Fp\": p}, got %r" % (doc,))

    def __str__(self):
        return "Q" if self.characteristic == 0 else "F_%d" % self.characteristic


QQ = Field(0)

