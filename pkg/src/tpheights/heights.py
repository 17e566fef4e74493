"""
Absolute logarithmic Weil heights of algebraic numbers given by minimal
polynomials, and the height of a polynomial image f(alpha).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .enclosure import RealEnclosure, log_enclosure
from .poly_exact import IntPoly, resultant
from .roots_certified import (DEFAULT_PRECISION, IrreducibilityCertificate,
                              mahler_measure, supnorm_unit_circle)


class ResultantDegenerate(ValueError):
    pass


class LemmaViolation(AssertionError):
    """A certified counterexample to h(f(a)) <= deg(f) h(a) + log ||f||; always a bug."""


@dataclass(frozen=True)
class AlgebraicNumberRep:
    """An algebraic number up to conjugacy, i.e. its minimal polynomial."""

    minpoly: IntPoly
    irreducibility: Union[IrreducibilityCertificate, bool, None] = None

    def __post_init__(self):
        if self.minpoly.degree < 1:
            raise ValueError("minimal polynomial must be nonconstant")
        object.__setattr__(self, "minpoly", self.minpoly.primitive())

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def is_irreducible(self) -> bool:
        if isinstance(self.irreducibility, IrreducibilityCertificate):
            return self.irreducibility.certified
        return bool(self.irreducibility)


@dataclass(frozen=True)
class HeightValue:
    value: RealEnclosure
    degree: int


def _log_mahler_over_degree(f: IntPoly, precision_bits: int) -> RealEnclosure:
    m = mahler_measure(f, precision_bits).measure
    return log_enclosure(m, precision_bits) / f.degree


def height(a: Union[AlgebraicNumberRep, IntPoly],
           precision_bits: int = DEFAULT_PRECISION) -> HeightValue:
    """log M(minpoly) / deg.

    For a reducible polynomial this is the degree-weighted average height of
    its roots, so some root has height at most this value.
    """
    f = a.minpoly if isinstance(a, AlgebraicNumberRep) else a.primitive()
    return HeightValue(_log_mahler_over_degree(f, precision_bits), f.degree)


def _interpolate(xs: list[int], ys: list[int]) -> IntPoly:
    """Lagrange interpolation over Q; the result must have integer coefficients."""
    n = len(xs)
    # Newton divided differences
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly
        for k in range(len(poly)):
            shifted[k] -= xs[i] * poly[k]
        shifted[0] += coef[i]
        poly = shifted
    if any(c.denominator != 1 for c in poly):
        raise ArithmeticError("interpolated resultant is not integral")
    return IntPoly(int(c) for c in poly)


def image_polynomial(minpoly: IntPoly, f: IntPoly) -> IntPoly:
    """R(x) = Res_y(minpoly(y), x - f(y)), by evaluation at deg+1 integers and interpolation."""
    n = minpoly.degree
    xs = list(range(n + 1))
    ys = [resultant(minpoly, IntPoly((x,)) - f) for x in xs]
    return _interpolate(xs, ys)


def height_of_image(a: AlgebraicNumberRep, f: IntPoly,
                    precision_bits: int = DEFAULT_PRECISION) -> HeightValue:
    """Enclosure of h(f(a)).

    prim(R) is a power of the minimal polynomial of f(a) (Gauss's lemma), so
    log M(prim R) / deg R equals h(f(a)) without factoring.
    """
    if f.degree < 1:
        raise ValueError("f must be nonconstant")
    if a.irreducibility is not None and not a.is_irreducible:
        raise ValueError("height_of_image needs an irreducible minimal polynomial")
    R = image_polynomial(a.minpoly, f)
    if R.degree < 1:
        raise ResultantDegenerate(f"resultant is constant for {a.minpoly}, {f}")
    return HeightValue(_log_mahler_over_degree(R.primitive(), precision_bits), R.degree)


@dataclass(frozen=True)
class ImageBoundCheck:
    holds: bool
    lhs: RealEnclosure  # h(f(a))
    rhs: RealEnclosure  # deg(f) h(a) + log ||f||_inf
    supnorm: RealEnclosure


def check_height_image_bound(a: AlgebraicNumberRep, f: IntPoly,
                             precision_bits: int = DEFAULT_PRECISION) -> ImageBoundCheck:
    """Verify h(f(a)) <= deg(f) h(a) + log ||f||_inf up to enclosure widths."""
    lhs = height_of_image(a, f, precision_bits).value
    h = height(a, precision_bits).value
    norm = supnorm_unit_circle(f, precision_bits)
    rhs = h * f.degree + log_enclosure(norm, precision_bits)
    if lhs.lo > rhs.hi:
        raise LemmaViolation(f"h(f(a)) in {lhs} exceeds {rhs} for {a.minpoly}, f = {f}")
    return ImageBoundCheck(True, lhs, rhs, norm)


def rational_root(f: IntPoly) -> Optional[Fraction]:
    """Some rational root of f, or None (rational root theorem search)."""
    if f[0] == 0:
        return Fraction(0)
    divs = lambda n: [d for d in range(1, abs(n) + 1) if n % d == 0]
    for q in divs(f.lc):
        for r in divs(f[0]):
            for cand in (Fraction(r, q), Fraction(-r, q)):
                if f(cand) == 0:
                    return cand
    return None


def is_irreducible_low_degree(f: IntPoly) -> bool:
    """Irreducibility over Q for primitive f of degree <= 3."""
    if f.degree > 3:
        raise ValueError("only degrees up to 3 are decided here")
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    return f.primitive() == f and rational_root(f) is None
