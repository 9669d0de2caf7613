"""Exact dyadic rationals ``mantissa * 2**(-exponent)``."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Union

Number = Union["Dyadic", int]


def _trailing_zeros(x: int) -> int:
    return (x & -x).bit_length() - 1


def log2_int(x: int) -> float:
    """log2 of a positive int of any size, to double precision."""
    if x <= 0:
        raise ValueError("log2 of a non-positive integer")
    bl = x.bit_length()
    if bl <= 1000:
        return math.log2(x)
    shift = bl - 64
    return shift + math.log2(x >> shift)


@total_ordering
class Dyadic:
    """Normalised so the mantissa is odd, or zero with exponent 0."""

    __slots__ = ("mantissa", "exponent")

    def __init__(self, mantissa: int = 0, exponent: int = 0) -> None:
        if mantissa == 0:
            exponent = 0
        else:
            tz = _trailing_zeros(mantissa)
            if tz:
                mantissa >>= tz
                exponent -= tz
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def from_fraction(cls, q: Fraction) -> "Dyadic":
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} is not dyadic")
        return cls(q.numerator, den.bit_length() - 1)

    @classmethod
    def pow2(cls, e: int) -> "Dyadic":
        return cls(1, -e)

    @staticmethod
    def _coerce(other: object) -> "Dyadic | None":
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic(other)
        if isinstance(other, Fraction):
            try:
                return Dyadic.from_fraction(other)
            except ValueError:
                return None
        return None

    def __add__(self, other: Number) -> "Dyadic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        e = max(self.exponent, o.exponent)
        return Dyadic((self.mantissa << (e - self.exponent)) + (o.mantissa << (e - o.exponent)), e)

    __radd__ = __add__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.mantissa, self.exponent)

    def __sub__(self, other: Number) -> "Dyadic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Number) -> "Dyadic":
        return (-self) + other

    def __mul__(self, other: Number) -> "Dyadic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Dyadic(self.mantissa * o.mantissa, self.exponent + o.exponent)

    __rmul__ = __mul__

    def scale2(self, k: int) -> "Dyadic":
        """``self * 2**k``."""
        return Dyadic(self.mantissa, self.exponent - k)

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            if isinstance(other, float):
                return self.to_fraction() == other
            return NotImplemented
        return self.mantissa == o.mantissa and self.exponent == o.exponent

    def __lt__(self, other: Number) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        e = max(self.exponent, o.exponent)
        return (self.mantissa << (e - self.exponent)) < (o.mantissa << (e - o.exponent))

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __bool__(self) -> bool:
        return self.mantissa != 0

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa, 1 << self.exponent)
        return Fraction(self.mantissa << -self.exponent)

    def is_integer(self) -> bool:
        return self.exponent <= 0

    def __int__(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.mantissa << -self.exponent

    def __float__(self) -> float:
        return float(self.to_fraction())

    def log2(self) -> float:
        """log2 of a positive value; ``-inf`` for zero."""
        if self.mantissa == 0:
            return -math.inf
        if self.mantissa < 0:
            raise ValueError("log2 of a negative dyadic")
        return log2_int(self.mantissa) - self.exponent

    def exact_log2(self) -> int:
        """Integer ``e`` with ``self == 2**e``; raises unless the value is a power of two."""
        if self.mantissa != 1:
            raise ValueError(f"{self} is not a power of two")
        return -self.exponent

    def __repr__(self) -> str:
        return f"Dyadic({self.mantissa}, {self.exponent})"

    def __str__(self) -> str:
        if self.exponent <= 0:
            return str(int(self))
        return f"{self.mantissa}/2^{self.exponent}"


ZERO = Dyadic(0)
ONE = Dyadic(1)


def dyadic_sum(terms: Iterable[tuple[int, int]]) -> Dyadic:
    """Sum of ``num * 2**(-exp)`` pairs with one big shift-and-add pass."""
    terms = [(n, e) for n, e in terms if n]
    if not terms:
        return ZERO
    top = max(e for _, e in terms)
    return Dyadic(sum(n << (top - e) for n, e in terms), top)


def log2_sum_exp(values: Iterable[float]) -> float:
    """log2(sum 2**v) with the usual max shift; ``-inf`` entries are ignored."""
    vals = [v for v in values if v != -math.inf]
    if not vals:
        return -math.inf
    top = max(vals)
    return top + math.log2(math.fsum(2.0 ** (v - top) for v in vals))
