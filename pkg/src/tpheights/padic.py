"""
p-adic tools over exact integers: valuations, Newton polygons, Hensel lifting
and certificates that a polynomial splits completely over Q_p.

Everything here is modular arithmetic on Python integers, so a certificate can
be re-checked by anyone with the recorded valuations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .poly_exact import IntPoly, derivative

INF = math.inf

SIMPLE = "SimpleRoot"
MULTIPLE = "MultipleRoot"
NOT_ROOT = "NotRoot"


def valuation(n: int, p: int) -> Union[int, float]:
    """Exponent of p in n; +inf for n = 0."""
    if n == 0:
        return INF
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation_rational(x: Fraction, p: int) -> Union[int, float]:
    x = Fraction(x)
    if x == 0:
        return INF
    return valuation(x.numerator, p) - valuation(x.denominator, p)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


# -- Newton polygon ------------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (i, v_p(a_i)) as (slope, length) pairs, slopes increasing."""

    segments: tuple[tuple[Fraction, int], ...]
    vertices: tuple[tuple[int, int], ...] = ()

    def __iter__(self):
        return iter(self.segments)

    def __len__(self):
        return len(self.segments)

    def as_list(self) -> list[tuple[Fraction, int]]:
        return list(self.segments)


def newton_polygon(f: IntPoly, p: int) -> NewtonPolygon:
    if f.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    pts = [(i, valuation(a, p)) for i, a in enumerate(f.coeffs) if a]
    hull: list[tuple[int, int]] = []
    for pt in pts:
        # pop while the last turn is not strictly convex (collinear points merge)
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return NewtonPolygon(tuple(segs), tuple(hull))


# -- residues and Hensel -------------------------------------------------------

def reduction_simple_roots(f: IntPoly, p: int) -> dict[int, str]:
    """Classify every residue r mod p as NotRoot, SimpleRoot or MultipleRoot."""
    df = derivative(f)
    out = {}
    for r in range(p):
        if f(r) % p:
            out[r] = NOT_ROOT
        elif df(r) % p:
            out[r] = SIMPLE
        else:
            out[r] = MULTIPLE
    return out


@dataclass(frozen=True)
class RootEvidence:
    """One Q_p root of f, with the exact data that proves it exists."""

    kind: str  # SimpleResidueLift | StrongHensel | PolygonUnitSegment
    point: Optional[int] = None  # residue r or Hensel point a
    val_f: Union[int, float, None] = None
    val_fprime: Union[int, float, None] = None
    slope: Optional[int] = None

    @property
    def residue(self) -> Optional[int]:
        return None if self.point is None else self.point

    def hensel_radius(self) -> Union[int, float]:
        """Exponent rho with the root in {x : v(x - a) >= rho}."""
        if self.val_f is None:
            raise ValueError("only point evidence has a Hensel disk")
        if self.val_f == INF:
            return INF
        return self.val_f - self.val_fprime

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.point is not None:
            d["point"] = str(self.point)
        if self.val_f is not None:
            d["val_f"] = "inf" if self.val_f == INF else self.val_f
            d["val_fprime"] = "inf" if self.val_fprime == INF else self.val_fprime
        if self.slope is not None:
            d["slope"] = self.slope
        return d


def strong_hensel_check(f: IntPoly, p: int, a: int) -> Optional[RootEvidence]:
    """StrongHensel evidence iff v_p(f(a)) > 2 v_p(f'(a)); otherwise None."""
    vf = valuation(f(a), p)
    vd = valuation(derivative(f)(a), p)
    if vf == INF or (vd != INF and vf > 2 * vd):
        return RootEvidence("StrongHensel", a, vf, vd)
    return None


def hensel_lift(f: IntPoly, p: int, a: int, digits: int) -> int:
    """Root of f in Z_p congruent to a, modulo p^digits.

    Requires v(f(a)) > 2 v(f'(a)).  Newton steps are done on exact integers.
    """
    df = derivative(f)
    ev = strong_hensel_check(f, p, a)
    if ev is None:
        raise ValueError(f"{a} does not satisfy the Hensel hypothesis mod {p}")
    if ev.val_f == INF:
        return a % p ** digits
    k = ev.val_fprime
    target = digits + 2 * k + 1
    mod = p ** target
    x = a
    while True:
        fx = f(x)
        if fx % mod == 0:
            break
        d = df(x)
        vd = valuation(d, p)
        u = d // p ** vd
        # f(x)/f'(x) is p-integral under the Hensel hypothesis
        step = (fx // p ** vd) * pow(u, -1, mod) % mod
        x = (x - step) % mod
    return x % p ** digits


# -- splitting certificates ----------------------------------------------------

@dataclass
class SplittingCertificate:
    prime: int
    degree: int
    evidence: list[RootEvidence] = field(default_factory=list)
    residue_classes: dict = field(default_factory=dict)
    polygon: Optional[NewtonPolygon] = None

    @property
    def distinct_root_count(self) -> int:
        return len(self.evidence)

    @property
    def conclusion(self) -> str:
        n = self.distinct_root_count
        # deg - 1 roots in Q_p force the last one, since the root sum is rational
        if n >= self.degree - 1:
            return "SplitsCompletely"
        if n:
            return f"AtLeastNRoots({n})"
        return "Inconclusive"

    @property
    def splits(self) -> bool:
        return self.conclusion == "SplitsCompletely"

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "degree": self.degree,
            "distinct_root_count": self.distinct_root_count,
            "conclusion": self.conclusion,
            "evidence": [e.to_dict() for e in self.evidence],
            "newton_polygon": None if self.polygon is None else
            [{"slope": str(s), "length": n} for s, n in self.polygon.segments],
        }


def _disks_disjoint(a: RootEvidence, b: RootEvidence, p: int) -> bool:
    ra, rb = a.hensel_radius(), b.hensel_radius()
    if a.point == b.point:
        return False
    # ultrametric balls {v(x-a) >= ra}, {v(x-b) >= rb} are disjoint iff v(a-b) < min(ra, rb)
    return valuation(a.point - b.point, p) < min(ra, rb)


def count_distinct_qp_roots(f: IntPoly, p: int, search_depth: int = 3) -> SplittingCertificate:
    """Collect pairwise-distinct Q_p roots of f from residues, Hensel points and the polygon."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    f = f.primitive()
    df = derivative(f)
    classes = reduction_simple_roots(f, p)
    cert = SplittingCertificate(p, f.degree, residue_classes=classes)

    for r, cls in classes.items():
        if cls == SIMPLE:
            cert.evidence.append(RootEvidence("SimpleResidueLift", r,
                                              valuation(f(r), p), valuation(df(r), p)))

    hensel: list[RootEvidence] = []
    for r, cls in classes.items():
        if cls != MULTIPLE:
            continue
        candidates = [r] + [r + t * p ** j for j in range(1, search_depth) for t in range(1, p)]
        for a in candidates:
            ev = strong_hensel_check(f, p, a)
            if ev is None:
                continue
            if ev.val_fprime == 0:
                # same root as a simple residue lift
                continue
            if all(_disks_disjoint(ev, h, p) for h in hensel):
                hensel.append(ev)
    cert.evidence.extend(hensel)

    poly = newton_polygon(f, p)
    cert.polygon = poly
    has_residue_zero = any(e.point is not None and e.point % p == 0 for e in cert.evidence)
    for slope, length in poly.segments:
        if length != 1 or slope == 0:
            continue
        # slope s <-> one root of valuation -s
        if slope > 0 or not has_residue_zero:
            cert.evidence.append(RootEvidence("PolygonUnitSegment", slope=int(slope)))
    return cert


def quadratic_splits(a: int, b: int, c: int, p: int) -> bool:
    """Whether a x^2 + b x + c splits over Q_p.

    A zero discriminant (double root) counts as splitting.
    """
    if a == 0:
        raise ValueError("leading coefficient must be nonzero")
    D = b * b - 4 * a * c
    if D == 0:
        return True
    v = valuation(D, p)
    if v % 2:
        return False
    u = D // p ** v
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1
