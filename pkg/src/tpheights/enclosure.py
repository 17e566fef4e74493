"""
Real enclosures with exact rational endpoints.

Arithmetic on endpoints is exact (``Fraction``); transcendental functions are
evaluated with mpmath at a few guard bits above the requested precision and the
result is widened outward before being rounded to a dyadic grid, so the
returned interval always contains the true value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

import mpmath

Number = Union[int, Fraction]

GUARD_BITS = 24


def floor_dyadic(x: Fraction, bits: int) -> Fraction:
    x = Fraction(x)
    scale = 1 << bits
    return Fraction((x.numerator * scale) // x.denominator, scale)


def ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    x = Fraction(x)
    scale = 1 << bits
    return Fraction(-((-x.numerator * scale) // x.denominator), scale)


def sqrt_floor(x: Fraction, bits: int) -> Fraction:
    """Largest multiple of 2^-bits not exceeding sqrt(x)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of negative number")
    scaled = (x.numerator << (2 * bits)) // x.denominator
    return Fraction(isqrt(scaled), 1 << bits)


def sqrt_ceil(x: Fraction, bits: int) -> Fraction:
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of negative number")
    num = x.numerator << (2 * bits)
    scaled = -((-num) // x.denominator)
    r = isqrt(scaled)
    if r * r < scaled:
        r += 1
    return Fraction(r, 1 << bits)


def _mpf_to_fraction(y: mpmath.mpf) -> Fraction:
    sign, man, exp, _ = y._mpf_
    if not man:
        return Fraction(0)
    return Fraction(-man if sign else man) * (Fraction(2) ** exp)


@dataclass(frozen=True)
class RealEnclosure:
    """Closed interval [lo, hi] certified to contain one exact real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty enclosure [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def exact(cls, x: Number) -> "RealEnclosure":
        return cls(Fraction(x), Fraction(x))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if isinstance(x, RealEnclosure):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, (int, Fraction)):
            return self.lo <= x <= self.hi
        # mpmath / float values: compare through an exact conversion
        x = _mpf_to_fraction(mpmath.mpf(x))
        return self.lo <= x <= self.hi

    def intersects(self, other: "RealEnclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def certainly_lt(self, other) -> bool:
        other = _as_enclosure(other)
        return self.hi < other.lo

    def certainly_le(self, other) -> bool:
        other = _as_enclosure(other)
        return self.hi <= other.lo

    def certainly_gt(self, other) -> bool:
        return _as_enclosure(other).certainly_lt(self)

    def __add__(self, other):
        other = _as_enclosure(other)
        return RealEnclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RealEnclosure(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_enclosure(other))

    def __rsub__(self, other):
        return _as_enclosure(other) - self

    def __mul__(self, other):
        other = _as_enclosure(other)
        prods = [self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi]
        return RealEnclosure(min(prods), max(prods))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_enclosure(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("division by an enclosure containing 0")
        inv = RealEnclosure(1 / other.hi, 1 / other.lo)
        return self * inv

    def __pow__(self, n: int):
        out = RealEnclosure.exact(1)
        for _ in range(n):
            out = out * self
        return out

    def rounded(self, bits: int) -> "RealEnclosure":
        """Outward rounding of both endpoints to multiples of 2^-bits."""
        return RealEnclosure(floor_dyadic(self.lo, bits), ceil_dyadic(self.hi, bits))

    def hull(self, other: "RealEnclosure") -> "RealEnclosure":
        return RealEnclosure(min(self.lo, other.lo), max(self.hi, other.hi))

    def to_mpf(self) -> mpmath.mpf:
        return mpmath.mpf(self.mid.numerator) / self.mid.denominator

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"RealEnclosure([{float(self.lo):.12g}, {float(self.hi):.12g}])"


def _as_enclosure(x) -> RealEnclosure:
    if isinstance(x, RealEnclosure):
        return x
    if isinstance(x, (int, Fraction)):
        return RealEnclosure.exact(x)
    raise TypeError(f"cannot treat {type(x).__name__} as an enclosure")


def _log_point(x: Fraction, prec: int, upward: bool) -> Fraction:
    if x <= 0:
        raise ValueError("log of a non-positive number")
    if x == 1:
        return Fraction(0)
    with mpmath.workprec(prec + GUARD_BITS):
        y = mpmath.log(mpmath.mpf(x.numerator) / x.denominator)
    y = _mpf_to_fraction(y)
    # widen by far more than the evaluation error at the guarded precision
    slack = Fraction(max(1, abs(int(y)) + 1), 1 << prec)
    return ceil_dyadic(y + slack, prec) if upward else floor_dyadic(y - slack, prec)


def log_enclosure(x, prec: int = 128) -> RealEnclosure:
    """Outward-rounded enclosure of log over an enclosure (or exact rational)."""
    x = _as_enclosure(x)
    if x.lo <= 0:
        raise ValueError("log of an enclosure reaching 0 or below")
    if x.is_exact() and x.lo == 1:
        return RealEnclosure.exact(0)
    return RealEnclosure(_log_point(x.lo, prec, False), _log_point(x.hi, prec, True))


def sqrt_enclosure(x, prec: int = 128) -> RealEnclosure:
    x = _as_enclosure(x)
    lo = sqrt_floor(x.lo, prec)
    hi = sqrt_ceil(x.hi, prec)
    # exact squares stay exact
    if x.is_exact():
        r = _exact_sqrt(x.lo)
        if r is not None:
            return RealEnclosure.exact(r)
    return RealEnclosure(lo, hi)


def _exact_sqrt(x: Fraction):
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def format_decimal(x: Fraction, digits: int = 20) -> str:
    with mpmath.workdps(digits + 10):
        return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, digits)
