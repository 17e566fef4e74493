"""
Exact arithmetic on integer and rational univariate polynomials.

Polynomials are dense, ascending: ``coeffs[i]`` is the coefficient of x^i.
The zero polynomial is the empty tuple.  Nothing in this module touches
floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class NotSelfReciprocal(ValueError):
    pass


class OddDegree(ValueError):
    pass


class PolyParseError(ValueError):
    pass


def _strip(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, ascending coefficients."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = _strip(int(a) for a in self.coeffs)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> "IntPoly":
        return cls((0,) * k + (a,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"IntPoly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)

    def __neg__(self):
        return IntPoly(-a for a in self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self), len(other))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(a * other for a in self.coeffs)
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = IntPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x):
        return evaluate(self, x)

    def compose(self, g: "IntPoly") -> "IntPoly":
        out = IntPoly()
        for a in reversed(self.coeffs):
            out = out * g + a
        return out

    def content(self) -> int:
        c = 0
        for a in self.coeffs:
            c = gcd(c, a)
        return c

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return IntPoly(a // c for a in self.coeffs)

    def trailing_zeros(self) -> int:
        for i, a in enumerate(self.coeffs):
            if a:
                return i
        return 0

    def shift_down(self) -> "IntPoly":
        """Divide out the largest power of x."""
        return IntPoly(self.coeffs[self.trailing_zeros():])


def _coerce(f) -> IntPoly:
    if isinstance(f, IntPoly):
        return f
    if isinstance(f, int):
        return IntPoly((f,))
    raise TypeError(f"cannot coerce {type(f).__name__} to IntPoly")


@dataclass(frozen=True)
class RatPoly:
    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(Fraction(a) for a in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_int(cls, f: IntPoly) -> "RatPoly":
        return cls(f.coeffs)

    def to_intpoly(self) -> IntPoly:
        """Positive multiple with integer coefficients (same roots)."""
        den = 1
        for a in self.coeffs:
            den = den * a.denominator // gcd(den, a.denominator)
        return IntPoly(int(a * den) for a in self.coeffs)


@dataclass(frozen=True)
class SturmResult:
    polynomial: RatPoly
    interval: tuple[Fraction, Fraction]
    count: int


# -- evaluation ----------------------------------------------------------------

def evaluate(f: IntPoly, x):
    """Horner evaluation; exact for int, Fraction, or anything closed under + and *."""
    acc = 0
    for a in reversed(f.coeffs):
        acc = acc * x + a
    return acc


def eval_rational(f: IntPoly, x: Rational) -> Fraction:
    x = Fraction(x)
    n, d = x.numerator, x.denominator
    acc = 0
    dk = 1
    # homogenized Horner: sum a_i n^i d^(deg-i), then divide by d^deg
    for a in reversed(f.coeffs):
        acc = acc * n + a * dk
        dk *= d
    if not f.coeffs:
        return Fraction(0)
    return Fraction(acc, d ** f.degree)


def sign_at(f: IntPoly, x: Rational) -> int:
    x = Fraction(x)
    n, d = x.numerator, x.denominator
    acc, dk = 0, 1
    # same homogenized sum as eval_rational; d > 0 so the sign needs no division
    for a in reversed(f.coeffs):
        acc = acc * n + a * dk
        dk *= d
    return (acc > 0) - (acc < 0)


def derivative(f: IntPoly) -> IntPoly:
    return IntPoly(i * a for i, a in enumerate(f.coeffs) if i)


def reciprocal(f: IntPoly) -> IntPoly:
    """x^deg(f) * f(1/x), trailing zeros stripped."""
    return IntPoly(reversed(f.coeffs))


def reduce_mod(f: IntPoly, m: int) -> IntPoly:
    if m < 2:
        raise ValueError("modulus must be at least 2")
    return IntPoly(a % m for a in f.coeffs)


# -- division ------------------------------------------------------------------

def divmod_rational(f: IntPoly, g: IntPoly) -> tuple[list[Fraction], list[Fraction]]:
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(a) for a in f.coeffs]
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    lc = g.lc
    dg = g.degree
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k] / lc
        if c:
            q[k - dg] = c
            for j, b in enumerate(g.coeffs):
                r[k - dg + j] -= c * b
    return q, list(_strip(r))


def exact_div(f: IntPoly, g: IntPoly) -> IntPoly:
    """Quotient f/g, which must be exact with integer coefficients."""
    q, r = divmod_rational(f, g)
    if r or any(c.denominator != 1 for c in q):
        raise ArithmeticError(f"{g} does not divide {f} over Z")
    return IntPoly(int(c) for c in q)


def divides(g: IntPoly, f: IntPoly) -> bool:
    _, r = divmod_rational(f, g)
    return not r


def prem(f: IntPoly, g: IntPoly) -> IntPoly:
    """Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f mod g, computed over Z."""
    if g.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero")
    r = list(f.coeffs)
    dg, lc = g.degree, g.lc
    if len(r) - 1 < dg:
        return f
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        r = [lc * a for a in r]
        if c:
            for j, b in enumerate(g.coeffs):
                r[k - dg + j] -= c * b
        r.pop()
    return IntPoly(r)


# -- gcd / resultant -----------------------------------------------------------

def gcd_primitive(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd over Z[x] with positive leading coefficient."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = prem(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Resultant via the subresultant pseudo-remainder sequence."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    a_cont, b_cont = f.content(), g.content()
    A = IntPoly(x // a_cont for x in f.coeffs)
    B = IntPoly(x // b_cont for x in g.coeffs)
    t = a_cont ** g.degree * b_cont ** f.degree
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -1
    if B.degree == 0:
        return s * t * B.lc ** A.degree
    gg = Fraction(1)
    h = Fraction(1)
    while True:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = prem(A, B)
        A = B
        if R.is_zero():
            return 0
        denom = gg * h ** delta
        B = IntPoly(_exact_int(Fraction(c) / denom) for c in R.coeffs)
        gg = Fraction(A.lc)
        h = h ** (1 - delta) * gg ** delta
        if B.degree == 0:
            h = h ** (1 - A.degree) * Fraction(B.lc) ** A.degree
            return s * t * _exact_int(h)


def _exact_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError("non-integral value in subresultant sequence")
    return x.numerator


# -- squarefree decomposition --------------------------------------------------

def squarefree_part(f: IntPoly) -> IntPoly:
    """Primitive squarefree part f / gcd(f, f')."""
    if f.degree <= 0:
        return IntPoly((1,)) if not f.is_zero() else f
    return exact_div(f.primitive(), gcd_primitive(f, derivative(f))).primitive()


def squarefree_decomposition(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Primitive pairwise-coprime (s_k, k) with prim(f) = +-prod s_k^k, s_k nonconstant.

    Uses P_1 = sqf(f), P_{k+1} = sqf(f / (P_1 ... P_k)), s_k = P_k / P_{k+1}.
    """
    g = f.primitive()
    if g.degree <= 0:
        return []
    layers = []
    while g.degree > 0:
        p = squarefree_part(g)
        layers.append(p)
        g = exact_div(g, p).primitive()
    layers.append(IntPoly((1,)))
    out = []
    for k in range(len(layers) - 1):
        s = exact_div(layers[k], layers[k + 1]).primitive()
        if s.degree > 0:
            out.append((s, k + 1))
    return out


# -- Sturm sequences -----------------------------------------------------------

def _positive_prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Remainder of a by b up to a *positive* scalar factor."""
    r = prem(a, b)
    e = a.degree - b.degree + 1
    if b.lc < 0 and e % 2:
        r = -r
    return r


def sturm_sequence(f: IntPoly) -> list[IntPoly]:
    seq = [f, derivative(f)]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        r = -_positive_prem(seq[-2], seq[-1])
        if r.is_zero():
            break
        c = r.content()
        seq.append(IntPoly(x // c for x in r.coeffs))
    return [s for s in seq if not s.is_zero()]


def sign_variations(seq: Sequence[IntPoly], x: Rational) -> int:
    signs = [s for s in (sign_at(p, x) for p in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(f: Union[IntPoly, RatPoly], a: Rational, b: Rational) -> SturmResult:
    """Exact number of distinct real roots of f in (a, b]."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("sturm_count needs a < b")
    g = f.to_intpoly() if isinstance(f, RatPoly) else f
    if g.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    rat = RatPoly.from_int(g) if isinstance(f, IntPoly) else f
    if g.degree == 0:
        return SturmResult(rat, (a, b), 0)
    seq = sturm_sequence(squarefree_part(g))
    return SturmResult(rat, (a, b), sign_variations(seq, a) - sign_variations(seq, b))


def isolate_real_roots(f: IntPoly, a: Rational, b: Rational,
                       width: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals, one per distinct root of f in (a, b], each of width <= width.

    A rational root hit exactly by bisection comes back as a degenerate interval (r, r).
    """
    s = squarefree_part(f)
    if s.degree <= 0:
        return []
    seq = sturm_sequence(s)

    def count(lo, hi):
        return sign_variations(seq, lo) - sign_variations(seq, hi)

    out = []
    stack = [(Fraction(a), Fraction(b))]
    while stack:
        lo, hi = stack.pop()
        n = count(lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(_refine_single(s, lo, hi, Fraction(width)))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def _refine_single(s: IntPoly, lo: Fraction, hi: Fraction, width: Fraction):
    # s squarefree with exactly one root in (lo, hi]
    if sign_at(s, hi) == 0:
        return (hi, hi)
    slo = sign_at(s, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = sign_at(s, mid)
        if sm == 0:
            return (mid, mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


# -- Chebyshev-like transform --------------------------------------------------

def chebyshev_transform(f: IntPoly) -> IntPoly:
    """P with f(z) = z^(d/2) P(z + 1/z) for self-reciprocal f of even degree d."""
    if reciprocal(f) != f or f.trailing_zeros():
        raise NotSelfReciprocal(f"{f} is not self-reciprocal")
    d = f.degree
    if d % 2:
        raise OddDegree(f"{f} has odd degree {d}")
    m = d // 2
    w = IntPoly.x()
    B_prev, B = IntPoly((2,)), w
    out = IntPoly((f[m],))
    for k in range(1, m + 1):
        out = out + B * f[m + k]
        B_prev, B = B, w * B - B_prev
    return out


# -- text format ---------------------------------------------------------------

_TERM = re.compile(r"^([+-]?)(\d+)?\*?(x(?:(?:\^|\*\*)(\d+))?)?$")


def parse_poly(text: str) -> IntPoly:
    """Parse "(-1,-8,1)" (ascending list) or "x^2-8x-1"."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise PolyParseError("empty polynomial")
    if s[0] in "([" and s[-1] in ")]":
        inner = s[1:-1]
        try:
            return IntPoly(int(t) for t in inner.split(",")) if inner else IntPoly()
        except ValueError as exc:
            raise PolyParseError(f"bad coefficient list {text!r}") from exc
    terms = re.findall(r"[+-]?[^+-]+", s.replace("**", "^"))
    if "".join(terms) != s.replace("**", "^"):
        raise PolyParseError(f"cannot parse {text!r}")
    coeffs: dict[int, int] = {}
    for t in terms:
        m = _TERM.match(t)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise PolyParseError(f"bad term {t!r} in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) is not None else 1
        if m.group(3) is None:
            e = 0
        else:
            e = int(m.group(4)) if m.group(4) is not None else 1
        coeffs[e] = coeffs.get(e, 0) + sign * c
    n = max(coeffs) + 1
    return IntPoly(coeffs.get(i, 0) for i in range(n))


def format_poly(f: IntPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for e in range(f.degree, -1, -1):
        a = f[e]
        if not a:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if e == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + ("x" if e == 1 else f"x^{e}")
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    return out + "".join(s + b for s, b in parts[1:])


def binomial_taylor(f: IntPoly, c: int) -> IntPoly:
    """f(x + c) as an integer polynomial."""
    d = f.degree
    return IntPoly(sum(f[j] * comb(j, k) * c ** (j - k) for j in range(k, d + 1))
                   for k in range(d + 1))
