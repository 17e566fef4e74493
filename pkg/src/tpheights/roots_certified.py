"""
Certified complex roots, Mahler measures and unit-circle sup-norms.

Roots are approximated with an Aberth iteration in mpmath, then each
approximation c is validated exactly: the Taylor expansion of f at c is
computed over the Gaussian integers (c has dyadic coordinates) and a
Rouche-type test

    |f(c)| + sum_{k>=2} |f^(k)(c)/k!| r^k  <  |f'(c)| r

shows that the disk |z - c| <= r contains exactly one root.  Pairwise
disjoint validated disks, one per root of the squarefree part, account for
every root.  Decisions about the unit circle itself are made exactly, by
Sturm counting on the Chebyshev-like transform.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional

import mpmath
import numpy as np

from .arith import is_prime
from .enclosure import (RealEnclosure, ceil_dyadic, floor_dyadic, sqrt_ceil,
                        sqrt_enclosure, sqrt_floor)
from .poly_exact import (IntPoly, chebyshev_transform, derivative,
                         eval_rational, exact_div, gcd_primitive,
                         isolate_real_roots, reciprocal, sign_at,
                         squarefree_decomposition, squarefree_part, sturm_count)

log = logging.getLogger(__name__)

DEFAULT_PRECISION = 128
DEFAULT_CAP = 4096


class PrecisionExhausted(RuntimeError):
    pass


class NoSignChange(ValueError):
    pass


@dataclass(frozen=True)
class ComplexDiskEnclosure:
    """Closed disk |z - center| <= radius holding exactly one root."""

    re: Fraction
    im: Fraction
    radius: Fraction
    multiplicity: int = 1

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def abs_bounds(self, bits: int = 160) -> RealEnclosure:
        """Enclosure of |z| for the root z in the disk."""
        n2 = self.re * self.re + self.im * self.im
        lo = sqrt_floor(n2, bits) - self.radius
        hi = sqrt_ceil(n2, bits) + self.radius
        if self.radius == 0:
            exact = sqrt_enclosure(RealEnclosure.exact(n2), bits)
            lo, hi = exact.lo, exact.hi
        return RealEnclosure(max(lo, Fraction(0)), hi)

    def outside_unit_disk(self) -> bool:
        # |c| - r > 1  <=>  |c| > 1 + r
        n2 = self.re * self.re + self.im * self.im
        return n2 > (1 + self.radius) ** 2

    def inside_unit_disk(self) -> bool:
        if self.radius >= 1:
            return False
        n2 = self.re * self.re + self.im * self.im
        return n2 < (1 - self.radius) ** 2

    def contains(self, z) -> bool:
        z = complex(z)
        dx = float(self.re) - z.real
        dy = float(self.im) - z.imag
        return dx * dx + dy * dy <= float(self.radius) ** 2 * (1 + 1e-9) + 1e-300

    def disjoint_from(self, other: "ComplexDiskEnclosure") -> bool:
        dx, dy = self.re - other.re, self.im - other.im
        return dx * dx + dy * dy > (self.radius + other.radius) ** 2

    def approx(self) -> complex:
        return complex(float(self.re), float(self.im))


@dataclass
class MahlerResult:
    measure: RealEnclosure
    roots: list[ComplexDiskEnclosure]
    outside_count: int
    inside_count: int
    on_circle_count: int
    on_circle_undecided_count: int
    precision_bits: int

    @property
    def total_count(self) -> int:
        return (self.outside_count + self.inside_count + self.on_circle_count
                + self.on_circle_undecided_count)


@dataclass
class IrreducibilityCertificate:
    kind: str  # "PerronOneRootOutside" | "AllRootsOutsidePrimeConstant" | "None"
    witness: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.kind != "None" and self.witness.get("certifies_irreducible", False)


@dataclass
class UnitCircleDecision:
    value: bool
    reason: str
    transform: Optional[IntPoly] = None
    real_roots_in_range: Optional[int] = None
    distinct_roots: Optional[int] = None
    stripped_factors: dict = field(default_factory=dict)

    def __bool__(self):
        return self.value


# -- floating approximations ---------------------------------------------------

def _seeds(f: IntPoly) -> list[complex]:
    d = f.degree
    try:
        c = np.array([float(a) for a in reversed(f.coeffs)])
        if np.all(np.isfinite(c)):
            r = np.roots(c)
            if len(r) == d and np.all(np.isfinite(r)):
                seeds = [complex(z) for z in r]
                # nudge exact duplicates apart; Aberth needs distinct starts
                for i in range(len(seeds)):
                    for j in range(i):
                        if seeds[i] == seeds[j]:
                            seeds[i] += complex(1e-7 * (i + 1), 1e-7)
                return seeds
    except (OverflowError, np.linalg.LinAlgError):
        pass
    bound = 1 + max(abs(Fraction(a, f.lc)) for a in f.coeffs[:-1])
    rad = float(bound) / 2
    return [rad * complex(np.cos(2 * np.pi * k / d + 0.4), np.sin(2 * np.pi * k / d + 0.4))
            for k in range(d)]


def _aberth(f: IntPoly, seeds: list[complex], wp: int, max_iter: int = 400) -> list:
    coeffs = [mpmath.mpf(a) for a in reversed(f.coeffs)]
    d = f.degree
    dcoeffs = [mpmath.mpf(a * (d - i)) for i, a in enumerate(reversed(f.coeffs)) if i < d]
    with mpmath.workprec(wp):
        z = [mpmath.mpc(s) for s in seeds]
        tol = mpmath.ldexp(1, -wp + 12)
        for _ in range(max_iter):
            biggest = mpmath.mpf(0)
            for i in range(d):
                zi = z[i]
                p = coeffs[0]
                for a in coeffs[1:]:
                    p = p * zi + a
                dp = dcoeffs[0]
                for a in dcoeffs[1:]:
                    dp = dp * zi + a
                if p == 0:
                    continue
                if dp == 0:
                    z[i] = zi + tol * 17
                    biggest = mpmath.mpf(1)
                    continue
                ratio = p / dp
                s = mpmath.mpc(0)
                for j in range(d):
                    if j != i:
                        diff = zi - z[j]
                        if diff != 0:
                            s += 1 / diff
                w = ratio / (1 - ratio * s)
                z[i] = zi - w
                rel = abs(w) / max(1, abs(zi))
                if rel > biggest:
                    biggest = rel
            if biggest < tol:
                break
    return z


# -- exact validation ----------------------------------------------------------

def _taylor_gaussian(f: IntPoly, X: int, Y: int, s: int) -> list[tuple[int, int]]:
    """Gaussian-integer Taylor coefficients G_k of F(C + u), F(y) = 2^(s d) f(y / 2^s), C = X + iY."""
    d = f.degree
    re = [a << (s * (d - j)) for j, a in enumerate(f.coeffs)]
    im = [0] * (d + 1)
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            br, bi = re[j + 1], im[j + 1]
            re[j] += X * br - Y * bi
            im[j] += X * bi + Y * br
    return list(zip(re, im))


def _validate_disk(f: IntPoly, X: int, Y: int, s: int) -> Optional[Fraction]:
    """Radius r (multiple of 2^-(s+8)) of a disk around (X+iY)/2^s holding exactly one root, or None."""
    d = f.degree
    G = _taylor_gaussian(f, X, Y, s)
    g0r, g0i = G[0]
    if g0r == 0 and g0i == 0:
        return Fraction(0)
    # |t_k| with t_k = G_k / 2^(s(d-k))
    def upper(k):
        n = G[k][0] ** 2 + G[k][1] ** 2
        r = isqrt(n)
        if r * r < n:
            r += 1
        return Fraction(r, 1 << (s * (d - k)))

    n1 = G[1][0] ** 2 + G[1][1] ** 2
    T1 = Fraction(isqrt(n1), 1 << (s * (d - 1)))
    if T1 == 0:
        return None
    T0 = upper(0)
    Tk = [upper(k) for k in range(2, d + 1)]
    eta = T0 / T1
    for factor in (2, 4, 16, 256):
        r = ceil_dyadic(factor * eta, s + 8)
        if r == 0:
            r = Fraction(1, 1 << (s + 8))
        # remainder bound sum_{k>=2} T_k r^k, evaluated by Horner
        acc = Fraction(0)
        for t in reversed(Tk):
            acc = acc * r + t
        tail = acc * r * r
        if T0 + tail < T1 * r:
            return r
    return None


def _scaled_int(x: mpmath.mpf, bits: int) -> int:
    """round(x * 2^bits), exactly."""
    sign, man, exp, _ = x._mpf_
    if sign:
        man = -man
    e = exp + bits
    if e >= 0:
        return man << e
    return (man + (1 << (-e - 1))) >> (-e)


def _validated_roots(s_poly: IntPoly, precision_bits: int, wp: int,
                     seeds=None) -> Optional[list[ComplexDiskEnclosure]]:
    approx = _aberth(s_poly, seeds if seeds is not None else _seeds(s_poly), wp)
    sbits = wp - 8
    target = Fraction(1, 1 << precision_bits)
    disks = []
    for z in approx:
        X = _scaled_int(z.real, sbits)
        Y = _scaled_int(z.imag, sbits)
        r = _validate_disk(s_poly, X, Y, sbits)
        if r is None or r > target:
            return None
        disks.append(ComplexDiskEnclosure(Fraction(X, 1 << sbits), Fraction(Y, 1 << sbits), r))
    for i in range(len(disks)):
        for j in range(i):
            if not disks[i].disjoint_from(disks[j]):
                return None
    return disks


def _enclose_squarefree(s_poly: IntPoly, precision_bits: int,
                        cap: int) -> list[ComplexDiskEnclosure]:
    if s_poly.degree <= 0:
        return []
    wp = precision_bits + 40
    seeds = None
    while wp <= cap + 40:
        disks = _validated_roots(s_poly, precision_bits, wp, seeds)
        if disks is not None:
            return disks
        log.debug("root validation failed at %d bits for %s", wp, s_poly)
        wp *= 2
    raise PrecisionExhausted(f"could not validate roots of {s_poly} within {cap} bits")


def enclose_roots(f: IntPoly, precision_bits: int = DEFAULT_PRECISION,
                  cap: int = DEFAULT_CAP) -> list[ComplexDiskEnclosure]:
    """Disjoint disks of radius <= 2^-precision_bits, one per distinct root of f.

    Each disk carries the multiplicity of its root in f.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    out = []
    for s, k in squarefree_decomposition(f):
        for disk in _enclose_squarefree(s, precision_bits, cap):
            out.append(ComplexDiskEnclosure(disk.re, disk.im, disk.radius, k))
    return out


# -- unit circle ---------------------------------------------------------------

def _strip_unit_roots(f: IntPoly) -> tuple[IntPoly, int, int]:
    n_one = n_minus = 0
    xm1, xp1 = IntPoly((-1, 1)), IntPoly((1, 1))
    while f.degree > 0 and f(1) == 0:
        f = exact_div(f, xm1)
        n_one += 1
    while f.degree > 0 and f(-1) == 0:
        f = exact_div(f, xp1)
        n_minus += 1
    return f, n_one, n_minus


def all_roots_on_unit_circle(f: IntPoly) -> UnitCircleDecision:
    """Exact decision whether every root of f has modulus 1."""
    if f.is_zero() or f[0] == 0:
        return UnitCircleDecision(False, "zero constant term")
    if f.degree == 0:
        return UnitCircleDecision(True, "constant")
    rf = reciprocal(f)
    if rf != f and rf != -f:
        return UnitCircleDecision(False, "not self-reciprocal up to sign")
    h, n_one, n_minus = _strip_unit_roots(f)
    stripped = {"x-1": n_one, "x+1": n_minus}
    if h.degree == 0:
        return UnitCircleDecision(True, "product of x-1 and x+1", None, 0, 0, stripped)
    P = chebyshev_transform(h)
    distinct = squarefree_part(P).degree
    count = sturm_count(P, -2, 2).count
    ok = count == distinct
    return UnitCircleDecision(ok, "chebyshev transform real-rooted in [-2,2]" if ok
                              else "chebyshev transform has roots off [-2,2]",
                              P, count, distinct, stripped)


def count_unit_circle_roots(s: IntPoly) -> int:
    """Exact number of distinct roots of squarefree s on |z| = 1."""
    s = s.shift_down()
    if s.degree <= 0:
        return 0
    h = gcd_primitive(s, reciprocal(s))
    if h.degree <= 0:
        return 0
    h, n_one, n_minus = _strip_unit_roots(h)
    n = n_one + n_minus
    if h.degree > 0:
        P = chebyshev_transform(h if reciprocal(h) == h else -h)
        # a root w in (-2,2) gives the pair z, conj(z) on the circle
        n += 2 * sturm_count(P, -2, 2).count
    return n


# -- Mahler measure ------------------------------------------------------------

def mahler_measure(f: IntPoly, precision_bits: int = DEFAULT_PRECISION,
                   cap: int = DEFAULT_CAP) -> MahlerResult:
    """Certified enclosure of M(f) = |lc| prod max(1, |root|)."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    lc = abs(f.lc)
    if f.degree == 0:
        return MahlerResult(RealEnclosure.exact(lc), [], 0, 0, 0, 0, precision_bits)
    zeros = f.trailing_zeros()
    g = f.shift_down()
    product = RealEnclosure.exact(1)
    roots: list[ComplexDiskEnclosure] = []
    out_n = in_n = circ_n = undecided_n = 0
    if zeros:
        roots.append(ComplexDiskEnclosure(Fraction(0), Fraction(0), Fraction(0), zeros))
        in_n += zeros
    bits = precision_bits + 16
    for s, k in squarefree_decomposition(g):
        on_circle = count_unit_circle_roots(s)
        prec = precision_bits
        while True:
            disks = _enclose_squarefree(s, prec, cap)
            outside = [dk for dk in disks if dk.outside_unit_disk()]
            inside = [dk for dk in disks if dk.inside_unit_disk()]
            pending = len(disks) - len(outside) - len(inside)
            if pending == on_circle or prec * 2 > cap:
                break
            prec *= 2
        factor = RealEnclosure.exact(1)
        for dk in outside:
            factor = factor * dk.abs_bounds(bits + prec)
        if pending != on_circle:
            # could not separate every root from the circle; leave them straddling 1
            for dk in disks:
                if dk not in outside and dk not in inside:
                    factor = factor * RealEnclosure(Fraction(1), max(Fraction(1), dk.abs_bounds(bits + prec).hi))
            undecided_n += k * pending
        else:
            circ_n += k * on_circle
        out_n += k * len(outside)
        in_n += k * len(inside)
        product = product * factor ** k
        roots.extend(ComplexDiskEnclosure(dk.re, dk.im, dk.radius, k) for dk in disks)
    measure = (product * lc)
    if not measure.is_exact():
        measure = measure.rounded(bits)
    return MahlerResult(measure, roots, out_n, in_n, circ_n, undecided_n, precision_bits)


# -- sup-norm on the unit circle -----------------------------------------------

def squared_modulus_transform(f: IntPoly) -> IntPoly:
    """G with |f(e^{it})|^2 = G(2 cos t)."""
    g = f.shift_down()
    return chebyshev_transform(g * reciprocal(g))


def _enclose_on_interval(G: IntPoly, a: Fraction, b: Fraction, lip: int,
                         bits: int) -> RealEnclosure:
    """Mean-value enclosure of G over [a, b], given |G'| <= lip on [-2, 2]."""
    if a == b:
        return RealEnclosure.exact(eval_rational(G, a)).rounded(bits)
    m = (a + b) / 2
    gm = eval_rational(G, m)
    half = (b - a) / 2
    return RealEnclosure(floor_dyadic(gm - lip * half, bits), ceil_dyadic(gm + lip * half, bits))


def supnorm_unit_circle(f: IntPoly, precision_bits: int = DEFAULT_PRECISION,
                        cap: int = DEFAULT_CAP) -> RealEnclosure:
    """Enclosure of max_{|z|=1} |f(z)|."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    G = squared_modulus_transform(f)
    best = RealEnclosure.exact(max(eval_rational(G, -2), eval_rational(G, 2)))
    dG = derivative(G)
    if dG.degree >= 1:
        # interval width small enough that the mean-value enclosure stays below 2^-prec
        lip = sum(abs(k * c) * 2 ** (k - 1) for k, c in enumerate(G.coeffs) if k)
        width = Fraction(1, (1 << precision_bits) * max(1, lip))
        sdG = squarefree_part(dG)
        for a, b in isolate_real_roots(sdG, Fraction(-2), Fraction(2), Fraction(1, 1 << 8)):
            a, b = refine_bracket(sdG, a, b, width)
            enc = _enclose_on_interval(G, a, b, lip, precision_bits + 16)
            best = RealEnclosure(max(best.lo, enc.lo), max(best.hi, enc.hi))
    return sqrt_enclosure(best, precision_bits + 8)


# -- real root brackets --------------------------------------------------------

def refine_bracket(s: IntPoly, lo: Fraction, hi: Fraction,
                   width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink a bracket of a simple root of s to width <= width.

    Newton steps in mpmath propose a tiny bracket around the root; two exact
    sign evaluations accept it.  Falls back to exact bisection.
    """
    if lo == hi or hi - lo <= width:
        return lo, hi
    slo, shi = sign_at(s, lo), sign_at(s, hi)
    if shi == 0:
        return hi, hi
    if slo == 0:
        return lo, lo
    bits = max(64, width.denominator.bit_length() - width.numerator.bit_length() + 32)
    ds = derivative(s)
    # evaluation near a root cancels roughly the coefficient size in bits
    guard = max(abs(c) for c in s.coeffs).bit_length() + s.degree.bit_length() + 2 * s.degree + 32
    with mpmath.workprec(bits + guard):
        x = mpmath.mpf(((lo + hi) / 2).numerator) / ((lo + hi) / 2).denominator
        coeffs = [mpmath.mpf(c) for c in reversed(s.coeffs)]
        dcoeffs = [mpmath.mpf(c) for c in reversed(ds.coeffs)]
        for _ in range(2 * bits.bit_length() + 8):
            step = mpmath.polyval(coeffs, x) / mpmath.polyval(dcoeffs, x)
            x -= step
            if abs(step) < mpmath.ldexp(1, -bits - 8):
                break
    if mpmath.isfinite(x):
        c = ceil_dyadic(_fraction_of(x), bits + 4)
        a, b = c - width / 2, c + width / 2
        if lo <= a and b <= hi:
            sa, sb = sign_at(s, a), sign_at(s, b)
            if sa == 0:
                return a, a
            if sb == 0:
                return b, b
            if sa == slo and sb == shi:
                return a, b
    log.debug("newton refinement rejected; bisecting")
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = sign_at(s, mid)
        if sm == 0:
            return mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _fraction_of(x: mpmath.mpf) -> Fraction:
    sign, man, exp, _ = x._mpf_
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def sign_bracket_root(f: IntPoly, a, b, width=None,
                      precision_bits: int = 64) -> RealEnclosure:
    """Refine a sign-change bracket of f by exact bisection."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        a, b = b, a
    sa, sb = sign_at(f, a), sign_at(f, b)
    if sa * sb >= 0:
        raise NoSignChange(f"f({a}) and f({b}) do not have opposite signs")
    width = Fraction(width) if width is not None else Fraction(1, 1 << precision_bits)
    while b - a > width:
        m = (a + b) / 2
        sm = sign_at(f, m)
        if sm == 0:
            return RealEnclosure.exact(m)
        if sm == sa:
            a = m
        else:
            b = m
    return RealEnclosure(a, b)


# -- irreducibility certificates -----------------------------------------------

def perron_certificate(f: IntPoly) -> IrreducibilityCertificate:
    """Perron's criterion: |a_{d-1}| > 1 + sum_{i <= d-2} |a_i| for monic f."""
    d = f.degree
    if d < 1 or f.lc != 1 or f[0] == 0:
        return IrreducibilityCertificate("None", {"reason": "needs monic f with nonzero constant"})
    lhs = abs(f[d - 1])
    rhs = 1 + sum(abs(f[i]) for i in range(d - 1))
    if not lhs > rhs:
        return IrreducibilityCertificate("None", {"lhs": lhs, "rhs": rhs})
    return IrreducibilityCertificate("PerronOneRootOutside", {
        "lhs": lhs, "rhs": rhs, "roots_outside": 1,
        "constant_term": f[0],
        "certifies_irreducible": abs(f[0]) == 1,
    })


def all_outside_prime_certificate(f: IntPoly, precision_bits: int = DEFAULT_PRECISION,
                                  cap: int = DEFAULT_CAP) -> IrreducibilityCertificate:
    """Every root outside the closed unit disk and |f(0)| prime => f irreducible."""
    if f.degree < 1 or f.lc != 1 or not is_prime(abs(f[0])):
        return IrreducibilityCertificate("None", {"reason": "needs monic f with prime |f(0)|"})
    prec = precision_bits
    while True:
        disks = enclose_roots(f, prec, cap)
        if all(dk.outside_unit_disk() for dk in disks):
            return IrreducibilityCertificate("AllRootsOutsidePrimeConstant", {
                "constant_term": f[0],
                "min_root_modulus_lower": min(dk.abs_bounds().lo for dk in disks),
                "certifies_irreducible": True,
            })
        if any(dk.inside_unit_disk() for dk in disks) or prec * 2 > cap:
            return IrreducibilityCertificate("None", {"reason": "root not certified outside"})
        if count_unit_circle_roots(squarefree_part(f)):
            return IrreducibilityCertificate("None", {"reason": "root on the unit circle"})
        prec *= 2
