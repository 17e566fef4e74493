"""
Lower and upper bounds for the smallest heights of totally p-adic numbers.

Lower bounds come from one engine: an auxiliary polynomial F with
v_p(F(alpha)) >= G at every place above p gives one linear inequality in the
proportion of such places, the trivial valuation estimate gives another, and
the bound is where the two lines meet,

    h(alpha) >= log(p^G / N) / (deg F + delta G),    N = ||F||_inf.

Upper bounds are heights of explicit totally p-adic witnesses, certified by a
Mahler measure enclosure plus a splitting certificate.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Optional

from .arith import is_prime
from .enclosure import RealEnclosure, format_decimal, log_enclosure
from .families import (FamilyId, construct, cyclotomic_factor_test, fermat_decompose,
                       self_reciprocal)
from .padic import SplittingCertificate, count_distinct_qp_roots, quadratic_splits
from .poly_exact import IntPoly, format_poly, sign_at
from .roots_certified import (DEFAULT_CAP, DEFAULT_PRECISION, PrecisionExhausted,
                              all_outside_prime_certificate, all_roots_on_unit_circle,
                              mahler_measure, perron_certificate, supnorm_unit_circle)

COROLLARY_PRIMES = (3, 5, 7, 11, 17, 19, 23, 29, 31, 41, 47)

CERTIFIED = "Certified"
UNDECIDED = "Undecided"
ABSENT = "Absent"


class VacuousBound(ValueError):
    pass


class CertificateIncomplete(RuntimeError):
    pass


class IntegralityClass(IntEnum):
    Unit = 0
    IntegerNonUnit = 1
    Other = 2


@dataclass(frozen=True)
class TestPolynomialScheme:
    """Auxiliary polynomial F, valuation gain G and an upper enclosure of ||F||_inf."""

    __test__ = False  # not a pytest class

    F: IntPoly
    gain: int
    supnorm: RealEnclosure
    name: str = ""

    def __post_init__(self):
        if self.F.degree < 1 or self.gain < 1:
            raise ValueError("scheme needs deg F >= 1 and G >= 1")

    @property
    def degree(self) -> int:
        return self.F.degree

    def supnorm_log(self, precision_bits: int = DEFAULT_PRECISION) -> RealEnclosure:
        return log_enclosure(self.supnorm, precision_bits)


def generic_scheme(p: int, precision_bits: int = DEFAULT_PRECISION) -> TestPolynomialScheme:
    """F = x^(p-1) - 1, G = 1 (Fermat's little theorem at unramified degree-1 places)."""
    F = IntPoly.monomial(p - 1) - 1
    return TestPolynomialScheme(F, 1, supnorm_unit_circle(F, precision_bits), f"x^{p-1}-1")


def scheme_p2(precision_bits: int = DEFAULT_PRECISION) -> TestPolynomialScheme:
    """F = x^2 - 1, G = 3: odd 2-adic units square to 1 mod 8."""
    F = IntPoly((-1, 0, 1))
    return TestPolynomialScheme(F, 3, supnorm_unit_circle(F, precision_bits), "x^2-1")


def scheme_p3(precision_bits: int = DEFAULT_PRECISION) -> TestPolynomialScheme:
    """F = (x^2-4)(x^2-1)(x^2+2), G = 4: a 3-adic unit squared is 4, 1 or -2 mod 9."""
    F = IntPoly((-4, 0, 1)) * IntPoly((-1, 0, 1)) * IntPoly((2, 0, 1))
    # ||F||_inf on the circle equals ||(x-4)(x-1)(x+2)||_inf, since F(z) = that at z^2
    N = supnorm_unit_circle(IntPoly.from_roots((4, 1, -2)), precision_bits)
    return TestPolynomialScheme(F, 4, N, "(x^2-4)(x^2-1)(x^2+2)")


def line_intersection_bound(p: int, scheme: TestPolynomialScheme,
                            delta: IntegralityClass,
                            precision_bits: int = DEFAULT_PRECISION) -> RealEnclosure:
    """Enclosure of log(p^G / N) / (d + delta G)."""
    pG = p ** scheme.gain
    if scheme.supnorm.hi >= pG:
        # also covers the case where the enclosure cannot separate N from p^G
        raise VacuousBound(f"p^G = {pG} does not exceed ||F|| in {scheme.supnorm}")
    num = log_enclosure(Fraction(pG), precision_bits) - scheme.supnorm_log(precision_bits)
    return num / (scheme.degree + int(delta) * scheme.gain)


def theorem1_lower(p: int, delta: IntegralityClass,
                   precision_bits: int = DEFAULT_PRECISION) -> RealEnclosure:
    """log(p/2) / (p - 1 + delta), from the closed form."""
    if p < 3 or not is_prime(p):
        raise ValueError("theorem1_lower needs an odd prime")
    return log_enclosure(Fraction(p, 2), precision_bits) / (p - 1 + int(delta))


def ramified_lower(p: int, e: int, f: int, delta: IntegralityClass,
                   precision_bits: int = DEFAULT_PRECISION) -> RealEnclosure:
    """log(p / 2^e) / (e (p^f - 1 + delta)) for ramification e and residue degree f."""
    if e < 1 or f < 1:
        raise ValueError("e and f must be positive")
    if p <= 2 ** e:
        raise VacuousBound(f"p = {p} does not exceed 2^e = {2 ** e}")
    return log_enclosure(Fraction(p, 2 ** e), precision_bits) / (e * (p ** f - 1 + int(delta)))


def galateau_bound(q: int, precision_bits: int = DEFAULT_PRECISION) -> RealEnclosure:
    """log(q/2) / (q^2 + 1)."""
    if q < 3 or not is_prime(q):
        raise ValueError("needs an odd prime")
    return log_enclosure(Fraction(q, 2), precision_bits) / (q * q + 1)


@dataclass(frozen=True)
class MultiPrimeBounds:
    bz_lower: RealEnclosure
    fp_lower: RealEnclosure
    bz_upper: RealEnclosure

    def __iter__(self):
        return iter((self.bz_lower, self.fp_lower, self.bz_upper))


def multi_prime_bounds(S: Iterable[int], precision_bits: int = DEFAULT_PRECISION) -> MultiPrimeBounds:
    """(1/2 sum log p/(p+1), 1/2 sum p log p/(p^2-1), sum log p/(p-1)) over S."""
    S = sorted(set(S))
    if not S or not all(is_prime(p) for p in S):
        raise ValueError("S must be a nonempty set of primes")
    zero = RealEnclosure.exact(0)
    bz, fp, up = zero, zero, zero
    for p in S:
        lp = log_enclosure(Fraction(p), precision_bits)
        bz = bz + lp / (2 * (p + 1))
        fp = fp + lp * Fraction(p, 2 * (p * p - 1))
        up = up + lp / (p - 1)
    return MultiPrimeBounds(bz, fp, up)


# -- upper bounds --------------------------------------------------------------

@dataclass
class BoundCell:
    value: Optional[RealEnclosure]
    formula: str
    witness: Optional[str] = None
    status: str = CERTIFIED
    certificates: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "value": enclosure_dict(self.value),
            "formula": self.formula,
            "witness": self.witness,
            "status": self.status,
            "certificates": self.certificates,
        }


def enclosure_dict(x: Optional[RealEnclosure], digits: int = 15) -> Optional[dict]:
    if x is None:
        return None
    return {"lo": str(x.lo), "hi": str(x.hi),
            "lo_decimal": format_decimal(x.lo, digits),
            "hi_decimal": format_decimal(x.hi, digits)}


def _mahler_dict(res) -> dict:
    return {
        "measure": enclosure_dict(res.measure),
        "outside": res.outside_count,
        "inside": res.inside_count,
        "on_circle": res.on_circle_count,
        "on_circle_undecided": res.on_circle_undecided_count,
        "precision_bits": res.precision_bits,
    }


def _min_cell(a: BoundCell, b: BoundCell) -> BoundCell:
    """The certainly smaller of two cells, preferring a when they cannot be separated."""
    if b.status == CERTIFIED and (a.status != CERTIFIED or b.value.hi < a.value.lo):
        return b
    return a


def fk_upper_cell(p: int, precision_bits: int = DEFAULT_PRECISION, cap: int = DEFAULT_CAP) -> BoundCell:
    """u_p <= log M(f_{p-2})/(p-1), with M(f_{p-2}) certified inside (p, p + p^(2-p))."""
    f = construct(FamilyId("fk", p, p - 2))
    fid = FamilyId("fk", p, p - 2)
    right = p + Fraction(1, p ** (p - 2))
    sign_p, sign_right = sign_at(f, p), sign_at(f, right)
    perron = perron_certificate(f)
    split = count_distinct_qp_roots(f, p)
    # M(f) sits within about p^(3-2p) of the right end, so separation needs
    # roughly 2p log2(p) bits; double until it certifies or the cap is hit
    prec = precision_bits
    while True:
        res = mahler_measure(f, prec, cap)
        M = res.measure
        in_bracket = M.lo > p and M.hi < right
        value = log_enclosure(M, prec) / (p - 1)
        cap_value = log_enclosure(right, prec) / (p - 1)
        if (in_bracket and value.hi < cap_value.lo) or prec * 2 > cap:
            break
        prec *= 2
    certs = {
        "f_at_p": f(p), "sign_at_bracket_right": sign_right,
        "bracket": [str(p), str(right)],
        "mahler": _mahler_dict(res),
        "mahler_in_bracket": in_bracket,
        "perron": {"kind": perron.kind, "certified": perron.certified},
        "splitting": split.to_dict(),
        "closed_form_cap": enclosure_dict(cap_value),
        "below_closed_form_cap": value.hi < cap_value.lo,
    }
    ok = (sign_p < 0 and sign_right > 0 and in_bracket and perron.certified
          and split.splits and value.hi < cap_value.lo)
    return BoundCell(value, "log M(f_{p-2})/(p-1)", str(fid), CERTIFIED if ok else UNDECIDED, certs)


def g_root_bracket(p: int) -> tuple[Fraction, Fraction]:
    m = fermat_decompose(p).m
    return Fraction(-p) + Fraction(1, p ** (m - 1)), Fraction(-p + 1)


def g_upper_cell(p: int, precision_bits: int = DEFAULT_PRECISION, cap: int = DEFAULT_CAP) -> BoundCell:
    """u_p <= log M(g)/(p-1): g has one root below -p+1, and its 2^n-th roots are totally p-adic."""
    dec = fermat_decompose(p)
    fid = FamilyId("g", p)
    g = construct(fid)
    a, b = g_root_bracket(p)
    sa, sb = sign_at(g, a), sign_at(g, b)
    perron = perron_certificate(g)
    # beta with beta^(2^n) = alpha is a root of g(x^(2^n)) = x^(p-1) + p x^(p-1-2^n) - 1
    lifted = g.compose(IntPoly.monomial(2 ** dec.n))
    split = count_distinct_qp_roots(lifted, p)
    # M(g) falls short of p by roughly p^(2-m); double until that gap shows
    prec = precision_bits
    while True:
        res = mahler_measure(g, prec, cap)
        value = log_enclosure(res.measure, prec) / (p - 1)
        target = log_enclosure(Fraction(p), prec) / (p - 1)
        if value.hi < target.lo or prec * 2 > cap:
            break
        prec *= 2
    certs = {
        "bracket": [str(a), str(b)], "signs": [sa, sb],
        "perron": {"kind": perron.kind, "certified": perron.certified},
        "lifted_polynomial": format_poly(lifted),
        "splitting": split.to_dict(),
        "mahler": _mahler_dict(res),
        "below_log_p_over_p_minus_1": value.hi < target.lo,
    }
    ok = sa * sb < 0 and perron.certified and split.splits and value.hi < target.lo
    return BoundCell(value, "log M(g)/(p-1)", str(fid), CERTIFIED if ok else UNDECIDED, certs)


def integral_upper_cell(p: int, precision_bits: int = DEFAULT_PRECISION,
                        cap: int = DEFAULT_CAP) -> BoundCell:
    """i_p <= log(p)/p from x^p - x + p, or log(2)/2 from x^2 + 2 when p = 3."""
    fid = FamilyId("xpxp", p)
    f = construct(fid)
    split = count_distinct_qp_roots(f, p)
    irr = all_outside_prime_certificate(f, precision_bits, cap)
    res = mahler_measure(f, precision_bits, cap)
    # all roots outside the unit disk: M = |f(0)| = p exactly
    value = log_enclosure(Fraction(p), precision_bits) / p
    certs = {
        "splitting": split.to_dict(),
        "irreducibility": {"kind": irr.kind, "certified": irr.certified},
        "mahler": _mahler_dict(res),
        "mahler_contains_p": res.measure.contains(p),
    }
    ok = split.splits and irr.certified and res.measure.contains(p)
    cell = BoundCell(value, "log(p)/p", str(fid), CERTIFIED if ok else UNDECIDED, certs)
    if p == 3:
        cell = _min_cell(cell, _i_cell_xp1(p, precision_bits))
    return cell


def _i_cell_xp1(p: int, precision_bits: int) -> BoundCell:
    """x^(p-1) + (p-1): roots of modulus (p-1)^(1/(p-1)) > 1, so M = p-1."""
    fid = FamilyId("xp1", p)
    f = construct(fid)
    split = count_distinct_qp_roots(f, p)
    res = mahler_measure(f, precision_bits)
    value = log_enclosure(Fraction(p - 1), precision_bits) / (p - 1)
    certs = {"splitting": split.to_dict(), "mahler": _mahler_dict(res)}
    ok = split.splits and res.measure.contains(p - 1) and res.outside_count == f.degree
    return BoundCell(value, "log(p-1)/(p-1)", str(fid), CERTIFIED if ok else UNDECIDED, certs)


@dataclass
class CorollaryCertificate:
    p: int
    verified: bool
    splitting: SplittingCertificate
    cyclotomic_factor: Optional[IntPoly]
    measure: RealEnclosure
    lhs: RealEnclosure  # log M / (p+1)
    rhs: RealEnclosure  # log p / p
    status: str
    precision_bits: int
    on_circle: Optional[bool] = None

    def __bool__(self):
        return self.verified

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "verified": self.verified,
            "status": self.status,
            "splitting": self.splitting.to_dict(),
            "cyclotomic_factor": None if self.cyclotomic_factor is None
            else format_poly(self.cyclotomic_factor),
            "measure": enclosure_dict(self.measure),
            "lhs": enclosure_dict(self.lhs),
            "rhs": enclosure_dict(self.rhs),
            "all_roots_on_circle": self.on_circle,
            "precision_bits": self.precision_bits,
        }


def verify_corollary_S(p: int, precision_bits: int = DEFAULT_PRECISION,
                       cap: int = DEFAULT_CAP, search_depth: int = 3) -> CorollaryCertificate:
    """Certify that SelfRecip(p) is totally p-adic with log M/(p+1) < log p / p."""
    if p < 3 or not is_prime(p):
        raise ValueError("needs an odd prime")
    f = self_reciprocal(p)
    split = count_distinct_qp_roots(f, p, search_depth)
    if not split.splits:
        raise CertificateIncomplete(
            f"only {split.distinct_root_count} of {f.degree} roots found in Q_{p}")
    cyc = cyclotomic_factor_test(p)
    on_circle = None
    if p in (3, 5, 7):
        on_circle = bool(all_roots_on_unit_circle(f))
    prec = precision_bits
    while True:
        M = mahler_measure(f, prec, cap).measure
        lhs = log_enclosure(M, prec) / (p + 1)
        rhs = log_enclosure(Fraction(p), prec) / p
        if lhs.hi < rhs.lo or lhs.lo >= rhs.hi or prec * 2 > cap:
            break
        prec *= 2
    strict = lhs.hi < rhs.lo
    if strict:
        status = CERTIFIED
    elif lhs.lo >= rhs.hi:
        status = "Refuted"
    else:
        status = UNDECIDED
    ok = strict and cyc is None and (on_circle is None or (on_circle and M == RealEnclosure.exact(p)))
    return CorollaryCertificate(p, ok, split, cyc, M, lhs, rhs, status if ok or not strict else UNDECIDED,
                                prec, on_circle)


def _n_cell(p: int, i_cell: BoundCell, precision_bits: int, cap: int) -> BoundCell:
    trivial = BoundCell(i_cell.value, "n_p <= i_p", i_cell.witness, i_cell.status,
                        {"from": "i_p upper"})
    if p == 2 or p % 12 == 1:
        return trivial
    try:
        cor = verify_corollary_S(p, precision_bits, cap)
    except CertificateIncomplete as exc:
        return BoundCell(trivial.value, trivial.formula, trivial.witness, trivial.status,
                         {"from": "i_p upper", "selfrecip": str(exc)})
    cell = BoundCell(cor.lhs, "log M(SelfRecip(p))/(p+1)", str(FamilyId("selfrecip", p)),
                     CERTIFIED if cor.splitting.splits and cor.cyclotomic_factor is None else UNDECIDED,
                     {"corollary": cor.to_dict()})
    return _min_cell(trivial, cell) if trivial.status == CERTIFIED else cell


@dataclass
class UpperBounds:
    u: BoundCell
    i: BoundCell
    n: BoundCell


def upper_bounds(p: int, precision_bits: int = DEFAULT_PRECISION,
                 cap: int = DEFAULT_CAP) -> UpperBounds:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        fid = FamilyId("quad2")
        f = construct(fid)
        res = mahler_measure(f, precision_bits, cap)
        split = quadratic_splits(f[2], f[1], f[0], 2)
        u = BoundCell(log_enclosure(res.measure, precision_bits) / 2, "log M(x^2-8x-1)/2", str(fid),
                      CERTIFIED if split else UNDECIDED,
                      {"mahler": _mahler_dict(res), "quadratic_splits": split})
        i = integral_upper_cell(2, precision_bits, cap)
    else:
        u = fk_upper_cell(p, precision_bits, cap)
        if not fermat_decompose(p).is_fermat:
            u = _min_cell(u, g_upper_cell(p, precision_bits, cap))
        i = integral_upper_cell(p, precision_bits, cap)
    n = _n_cell(p, i, precision_bits, cap)
    return UpperBounds(u, i, n)


# -- rows ----------------------------------------------------------------------

@dataclass
class BoundsRow:
    p: int
    lower_u: BoundCell
    lower_i: BoundCell
    lower_n: BoundCell
    upper_u: BoundCell
    upper_i: BoundCell
    upper_n: BoundCell

    def cells(self) -> dict[str, BoundCell]:
        return {"lower_u": self.lower_u, "lower_i": self.lower_i, "lower_n": self.lower_n,
                "upper_u": self.upper_u, "upper_i": self.upper_i, "upper_n": self.upper_n}

    def sandwich(self) -> dict[str, bool]:
        """Each lower enclosure strictly below the matching upper one."""
        out = {}
        for k in "uin":
            lo, up = getattr(self, f"lower_{k}"), getattr(self, f"upper_{k}")
            out[k] = lo.value is not None and up.value is not None and lo.value.hi < up.value.lo
        return out

    @property
    def status(self) -> str:
        ok = all(c.status == CERTIFIED for c in self.cells().values()) and all(self.sandwich().values())
        return CERTIFIED if ok else UNDECIDED

    def to_dict(self) -> dict:
        d = {"p": self.p}
        d.update({k: c.to_dict() for k, c in self.cells().items()})
        d["sandwich"] = self.sandwich()
        d["status"] = self.status
        return d


def lower_bounds(p: int, precision_bits: int = DEFAULT_PRECISION) -> tuple[BoundCell, BoundCell, BoundCell]:
    D = IntegralityClass
    if p == 2:
        sch = scheme_p2(precision_bits)
        tags = ("log(8/N)/2", "log(8/N)/5", "log(8/N)/8")
    elif p == 3:
        sch = scheme_p3(precision_bits)
        tags = ("log(81/N)/6", "log(81/N)/10", "log(81/N)/14")
    else:
        cells = []
        for delta, tag in zip(D, ("log(p/2)/(p-1)", "log(p/2)/p", "log(p/2)/(p+1)")):
            cells.append(BoundCell(theorem1_lower(p, delta, precision_bits), tag, None, CERTIFIED,
                                   {"scheme": f"x^{p-1}-1", "gain": 1}))
        return tuple(cells)
    info = {"scheme": sch.name, "gain": sch.gain, "supnorm": enclosure_dict(sch.supnorm)}
    return tuple(BoundCell(line_intersection_bound(p, sch, delta, precision_bits), tag, None,
                           CERTIFIED, dict(info))
                 for delta, tag in zip(D, tags))


def bounds_row(p: int, precision_bits: int = DEFAULT_PRECISION, cap: int = DEFAULT_CAP) -> BoundsRow:
    lu, li, ln = lower_bounds(p, precision_bits)
    up = upper_bounds(p, precision_bits, cap)
    return BoundsRow(p, lu, li, ln, up.u, up.i, up.n)


CSV_COLUMNS = ("p", "lower_u", "lower_i", "lower_n", "upper_u", "upper_i", "upper_n", "status")


def rows_to_csv(rows: Iterable[BoundsRow], digits: int = 12) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        vals = [row.p]
        for c in row.cells().values():
            vals.append("" if c.value is None else
                        f"[{format_decimal(c.value.lo, digits)},{format_decimal(c.value.hi, digits)}]")
        vals.append(row.status)
        w.writerow(vals)
    return buf.getvalue()


__all__ = [
    "COROLLARY_PRIMES", "VacuousBound", "CertificateIncomplete", "PrecisionExhausted",
    "IntegralityClass", "TestPolynomialScheme", "generic_scheme", "scheme_p2", "scheme_p3",
    "line_intersection_bound", "theorem1_lower", "ramified_lower", "galateau_bound",
    "multi_prime_bounds", "MultiPrimeBounds", "BoundCell", "upper_bounds", "UpperBounds",
    "verify_corollary_S", "CorollaryCertificate", "bounds_row", "BoundsRow", "lower_bounds",
    "rows_to_csv", "g_root_bracket", "enclosure_dict", "fk_upper_cell", "g_upper_cell",
    "integral_upper_cell",
]
