from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from oracles import mahler_numeric
from tpheights.enclosure import RealEnclosure, log_enclosure, sqrt_enclosure
from tpheights.families import construct, FamilyId, self_reciprocal
from tpheights.poly_exact import IntPoly, reciprocal
from tpheights.roots_certified import (NoSignChange, all_outside_prime_certificate,
                                       all_roots_on_unit_circle, count_unit_circle_roots,
                                       enclose_roots, mahler_measure, perron_certificate,
                                       sign_bracket_root, supnorm_unit_circle)

coeff = st.integers(-7, 7)
poly_st = (st.lists(coeff, min_size=2, max_size=6)
           .filter(lambda c: c[-1] != 0 and c[0] != 0).map(IntPoly))


def _contains_mp(enc: RealEnclosure, x) -> bool:
    return enc.lo <= Fraction(mpmath.nstr(x, 60, strip_zeros=False)) + Fraction(1, 10 ** 50) and \
        Fraction(mpmath.nstr(x, 60, strip_zeros=False)) - Fraction(1, 10 ** 50) <= enc.hi


# -- enclosure arithmetic -------------------------------------------------------

def test_enclosure_ops():
    a = RealEnclosure(Fraction(1), Fraction(2))
    b = RealEnclosure(Fraction(-1), Fraction(3))
    assert (a + b) == RealEnclosure(0, 5)
    assert (a * b) == RealEnclosure(-2, 6)
    assert (a - a) == RealEnclosure(-1, 1)
    with pytest.raises(ZeroDivisionError):
        a / b
    with pytest.raises(ValueError):
        RealEnclosure(2, 1)


@given(st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=1000))
def test_log_enclosure_contains_mpmath(x):
    enc = log_enclosure(x, 128)
    with mpmath.workdps(80):
        ref = mpmath.log(mpmath.mpf(x.numerator) / x.denominator)
    assert _contains_mp(enc, ref)
    assert enc.width < Fraction(1, 2 ** 100)


def test_sqrt_enclosure_exact_squares():
    assert sqrt_enclosure(Fraction(9, 4)) == RealEnclosure.exact(Fraction(3, 2))
    e = sqrt_enclosure(2)
    assert e.lo ** 2 <= 2 <= e.hi ** 2


# -- root enclosures ----------------------------------------------------------------

def test_enclose_roots_quadratic():
    disks = enclose_roots(IntPoly((-1, -8, 1)))
    with mpmath.workdps(50):
        refs = [4 + mpmath.sqrt(17), 4 - mpmath.sqrt(17)]
        for r in refs:
            assert sum(d.contains(mpmath.mpc(r)) for d in disks) == 1
    assert all(d.radius <= Fraction(1, 2 ** 128) for d in disks)


def test_enclose_roots_gaussian():
    disks = enclose_roots(IntPoly((1, 0, 1)))
    assert sorted(round(d.approx().imag) for d in disks) == [-1, 1]


def test_fk_one_root_outside():
    disks = enclose_roots(construct(FamilyId("fk", 5, 3)))
    assert sum(d.outside_unit_disk() for d in disks) == 1
    assert sum(d.inside_unit_disk() for d in disks) == 3


@settings(max_examples=30)
@given(poly_st)
def test_disks_disjoint_and_cover_roots(f):
    disks = enclose_roots(f, 96)
    for i, d in enumerate(disks):
        for e in disks[i + 1:]:
            assert d.disjoint_from(e)
    assert sum(d.multiplicity for d in disks) == f.degree


# -- Mahler measure -----------------------------------------------------------------

def test_mahler_examples():
    m = mahler_measure(construct(FamilyId("xpxp", 3))).measure
    assert m.contains(3) and m.width < Fraction(1, 10 ** 6)
    assert mahler_measure(IntPoly((-2, 1))).measure == RealEnclosure.exact(2)
    q = mahler_measure(IntPoly((-1, -8, 1))).measure
    with mpmath.workdps(50):
        assert _contains_mp(q, 4 + mpmath.sqrt(17))


def test_mahler_counts_sum_to_degree():
    f = IntPoly((-1, 1)) ** 2 * IntPoly((-1, -8, 1)) * IntPoly.monomial(2)
    r = mahler_measure(f)
    assert r.total_count == f.degree
    assert r.on_circle_count == 2 and r.on_circle_undecided_count == 0


@settings(max_examples=25)
@given(poly_st)
def test_mahler_matches_numeric_oracle(f):
    r = mahler_measure(f, 96)
    ref = mahler_numeric(list(f.coeffs))
    assert abs(float(r.measure.mid) - float(ref)) <= 1e-12 * float(ref)


@settings(max_examples=20)
@given(poly_st, poly_st)
def test_mahler_multiplicative(f, g):
    mf, mg = mahler_measure(f, 96).measure, mahler_measure(g, 96).measure
    assert mahler_measure(f * g, 96).measure.intersects(mf * mg)


@settings(max_examples=25)
@given(poly_st)
def test_mahler_reciprocal_invariant(f):
    assert mahler_measure(f, 96).measure.intersects(mahler_measure(reciprocal(f), 96).measure)


def test_on_circle_implies_measure_is_leading_coefficient():
    for p in (3, 5, 7):
        f = self_reciprocal(p)
        assert all_roots_on_unit_circle(f)
        assert mahler_measure(f).measure == RealEnclosure.exact(p)


def test_all_outside_contains_constant():
    for f in (IntPoly((3, -1, 0, 1)), IntPoly((2, -1, 1)), IntPoly((5, -1, 0, 0, 0, 1))):
        assert mahler_measure(f).measure.contains(abs(f[0]))


# -- unit circle --------------------------------------------------------------------

def test_unit_circle_decisions():
    assert all_roots_on_unit_circle(self_reciprocal(3))
    assert not all_roots_on_unit_circle(IntPoly((-1, -8, 1)))
    assert all_roots_on_unit_circle(IntPoly((1, 1, 1)))
    assert all_roots_on_unit_circle(IntPoly((-1, 1)) * IntPoly((1, 1)))
    # self-reciprocal with a real root pair off the circle
    assert not all_roots_on_unit_circle(IntPoly((1, -3, 1)))


def test_count_unit_circle_roots():
    assert count_unit_circle_roots(IntPoly((1, 1, 1)) * IntPoly((-1, -8, 1))) == 2
    assert count_unit_circle_roots(IntPoly((-1, 0, 0, 0, 1))) == 4
    assert count_unit_circle_roots(IntPoly((1, -3, 1))) == 0


# -- sup-norm -----------------------------------------------------------------------

def test_supnorm_lemma_constant():
    s = supnorm_unit_circle(IntPoly.from_roots((4, 1, -2)))
    assert s.width < Fraction(1, 10 ** 7)
    assert abs(float(s.mid) - 13.8748603) < 1e-6


def test_supnorm_trivial_examples():
    assert supnorm_unit_circle(IntPoly((7,))) == RealEnclosure.exact(7)
    for p in (3, 5, 13):
        assert supnorm_unit_circle(IntPoly.monomial(p - 1) - 1).contains(2)


@settings(max_examples=30)
@given(st.lists(coeff, min_size=1, max_size=5).filter(lambda c: any(c)).map(IntPoly))
def test_supnorm_at_least_endpoint_values(f):
    s = supnorm_unit_circle(f, 96)
    assert s.hi >= max(abs(f(1)), abs(f(-1)))
    # brute-force sampling never beats the certified upper end
    with mpmath.workdps(30):
        best = max(abs(mpmath.polyval(list(reversed(f.coeffs)), mpmath.expjpi(mpmath.mpf(k) / 256)))
                   for k in range(512))
    assert float(best) <= float(s.hi) + 1e-12
    assert float(best) >= float(s.lo) - 1e-3 * float(s.lo)


# -- brackets and certificates -----------------------------------------------------

def test_sign_bracket_examples():
    e = sign_bracket_root(IntPoly((-1, -3, 1)), 3, Fraction(10, 3), width=Fraction(1, 10 ** 12))
    assert e.contains(e.mid) and abs(float(e.mid) - (3 + 13 ** 0.5) / 2) < 1e-11
    g = construct(FamilyId("g", 7))
    e = sign_bracket_root(g, Fraction(-7) + Fraction(1, 49), -6, width=Fraction(1, 10 ** 12))
    with mpmath.workdps(30):
        ref = mpmath.findroot(lambda x: x ** 3 + 7 * x ** 2 - 1, -6.98)
    assert abs(float(e.mid) - float(ref)) < 1e-11
    e = sign_bracket_root(IntPoly((-2, 0, 1)), 1, 2, width=Fraction(1, 10 ** 15))
    assert e.lo ** 2 <= 2 <= e.hi ** 2
    with pytest.raises(NoSignChange):
        sign_bracket_root(IntPoly((1, 0, 1)), -1, 1)


def test_perron_examples():
    assert perron_certificate(IntPoly((-1, 0, 0, -5, 1))).certified
    assert perron_certificate(IntPoly((-1, -1, 1))).kind == "None"
    c = perron_certificate(IntPoly((-1, 0, 5, 1)))
    assert c.kind == "PerronOneRootOutside" and c.certified


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_perron_agrees_with_disks(p):
    f = construct(FamilyId("fk", p, p - 2))
    assert perron_certificate(f).certified
    disks = enclose_roots(f)
    assert sum(d.outside_unit_disk() for d in disks) == 1


def test_all_outside_examples():
    assert all_outside_prime_certificate(IntPoly((3, -1, 0, 1))).kind == "AllRootsOutsidePrimeConstant"
    assert all_outside_prime_certificate(IntPoly((2, -1, 1))).certified
    assert all_outside_prime_certificate(IntPoly((-1, 0, 1))).kind == "None"
