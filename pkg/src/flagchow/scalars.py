"""Exact scalars of the p-local integers Z_(p) and small number-theory helpers."""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import NotPLocalError, PrimeMismatchError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def int_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x, p: int):
    """p-adic valuation of a rational; math.inf for zero."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    return int_valuation(x.numerator, p) - (
        int_valuation(x.denominator, p) if x.denominator % p == 0 else 0
    )


def prime_to_p_part(n: int, p: int) -> int:
    n = abs(n)
    while n and n % p == 0:
        n //= p
    return n


def check_plocal(x, p: int) -> Fraction:
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NotPLocalError(f"{x} is not {p}-local")
    return x


def to_fp(x, p: int) -> int:
    """Reduce a p-local rational modulo p."""
    x = check_plocal(x, p)
    return x.numerator * pow(x.denominator, -1, p) % p


class PLocalScalar:
    """An element of Z_(p): a rational whose denominator is prime to p."""

    __slots__ = ("value", "p")

    def __init__(self, value, p: int):
        self.p = p
        self.value = check_plocal(value, p)

    def _coerce(self, other) -> Fraction:
        if isinstance(other, PLocalScalar):
            if other.p != self.p:
                raise PrimeMismatchError(f"cannot combine Z_({self.p}) and Z_({other.p})")
            return other.value
        if isinstance(other, (int, Fraction)):
            return check_plocal(other, self.p)
        return NotImplemented

    def valuation(self):
        return valuation(self.value, self.p)

    def is_unit(self) -> bool:
        return self.value != 0 and self.value.numerator % self.p != 0

    def unit_part(self) -> "PLocalScalar":
        """u with self = p^v * u."""
        if self.value == 0:
            raise ValueError("zero has no unit part")
        return PLocalScalar(self.value / Fraction(self.p) ** self.valuation(), self.p)

    def mod_p(self) -> int:
        return to_fp(self.value, self.p)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PLocalScalar(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PLocalScalar(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PLocalScalar(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PLocalScalar(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PLocalScalar(-self.value, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0 or Fraction(o).numerator % self.p == 0:
            raise NotPLocalError(f"{o} is not a unit in Z_({self.p})")
        return PLocalScalar(self.value / o, self.p)

    def __eq__(self, other):
        if isinstance(other, PLocalScalar):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"PLocalScalar({self.value}, p={self.p})"

    def __str__(self):
        return str(self.value)
