from __future__ import annotations

import csv
import io
from fractions import Fraction

import mpmath
import pytest

from tpheights.arith import primes_between
from tpheights.bounds import (CERTIFIED, IntegralityClass, TestPolynomialScheme, VacuousBound,
                              bounds_row, fk_upper_cell, g_root_bracket, g_upper_cell,
                              galateau_bound, generic_scheme, line_intersection_bound,
                              lower_bounds, multi_prime_bounds, ramified_lower, rows_to_csv,
                              scheme_p2, scheme_p3, theorem1_lower, upper_bounds,
                              verify_corollary_S)
from tpheights.enclosure import RealEnclosure, log_enclosure
from tpheights.poly_exact import IntPoly

D = IntegralityClass


def _close(enc: RealEnclosure, x, tol: float = 1e-12) -> bool:
    return float(enc.lo) - tol <= float(x) <= float(enc.hi) + tol


def test_closed_form_examples():
    with mpmath.workdps(30):
        assert _close(theorem1_lower(3, D.Unit), mpmath.log(1.5) / 2)
        assert _close(theorem1_lower(5, D.Other), mpmath.log(2.5) / 6)
        assert _close(ramified_lower(5, 2, 1, D.Unit), mpmath.log(1.25) / 8)
        assert _close(galateau_bound(3), mpmath.log(1.5) / 10)
    with pytest.raises(VacuousBound):
        ramified_lower(3, 2, 1, D.Unit)
    with pytest.raises(ValueError):
        theorem1_lower(9, D.Unit)


def test_scheme_p2_closed_forms():
    lows = [line_intersection_bound(2, scheme_p2(), d) for d in D]
    log2 = log_enclosure(2)
    for lo, c in zip(lows, (1, Fraction(2, 5), Fraction(1, 4))):
        assert lo.intersects(log2 * c)


def test_scheme_p3_printed_values():
    lows = [line_intersection_bound(3, scheme_p3(), d) for d in D]
    for lo, s in zip(lows, ("0.294061", "0.176437", "0.126026")):
        assert abs(lo.mid - Fraction(s)) < Fraction(5, 10 ** 6)


def test_vacuous_scheme():
    sch = TestPolynomialScheme(IntPoly((-1, 0, 1)), 1, RealEnclosure.exact(2))
    with pytest.raises(VacuousBound):
        line_intersection_bound(2, sch, D.Unit)
    with pytest.raises(ValueError):
        TestPolynomialScheme(IntPoly((5,)), 1, RealEnclosure.exact(5))


@pytest.mark.parametrize("p", primes_between(3, 101))
def test_generic_scheme_matches_closed_form(p):
    sch = generic_scheme(p)
    for d in D:
        a, b = theorem1_lower(p, d), line_intersection_bound(p, sch, d)
        assert a.intersects(b) and b.width < Fraction(1, 10 ** 9)


@pytest.mark.parametrize("scheme", [scheme_p2, scheme_p3, lambda: generic_scheme(7)],
                         ids=["p2", "p3", "generic7"])
def test_monotone_in_delta(scheme):
    sch = scheme()
    p = {3: 2, 4: 3}.get(sch.gain, 7)
    a, b, c = (line_intersection_bound(p, sch, d) for d in D)
    assert a.lo > b.hi and b.lo > c.hi


@pytest.mark.parametrize("p", primes_between(2, 47))
def test_sandwich(p):
    row = bounds_row(p)
    assert all(row.sandwich().values()), row.to_dict()
    assert row.status == CERTIFIED


@pytest.mark.parametrize("p", [7, 11, 13, 19, 23])
def test_non_fermat_refinement(p):
    a, b = g_root_bracket(p)
    assert a < b
    g = g_upper_cell(p)
    assert g.status == CERTIFIED and g.certificates["below_log_p_over_p_minus_1"]
    u = upper_bounds(p).u
    assert u.value.hi < (log_enclosure(p) / (p - 1)).lo


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_fk_cell_bracket(p):
    c = fk_upper_cell(p)
    assert c.status == CERTIFIED
    assert c.certificates["f_at_p"] == -1 and c.certificates["sign_at_bracket_right"] > 0
    assert c.certificates["mahler_in_bracket"]


def test_upper_examples():
    up = upper_bounds(3)
    assert up.i.witness == "xp1:p=3" and _close(up.i.value, mpmath.log(2) / 2)
    assert _close(up.n.value, mpmath.log(3) / 4)
    up2 = upper_bounds(2)
    with mpmath.workdps(30):
        assert _close(up2.u.value, mpmath.log(4 + mpmath.sqrt(17)) / 2)
    assert _close(up2.i.value, mpmath.log(2) / 2)


def test_corollary_examples():
    c = verify_corollary_S(5)
    assert c.verified and c.on_circle and c.measure == RealEnclosure.exact(5)
    c13 = upper_bounds(13).n
    assert c13.formula == "n_p <= i_p"


def test_lower_bounds_row_shape():
    cells = lower_bounds(5)
    assert [c.formula for c in cells] == ["log(p/2)/(p-1)", "log(p/2)/p", "log(p/2)/(p+1)"]


def test_multi_prime_ordering():
    for p in primes_between(2, 200):
        bz, fp, up = multi_prime_bounds([p])
        assert bz.hi <= fp.lo and fp.hi <= up.lo
    bz, fp, up = multi_prime_bounds([2, 3, 5])
    with mpmath.workdps(30):
        ref = sum(mpmath.log(p) / (2 * (p + 1)) for p in (2, 3, 5))
    assert _close(bz, ref)
    with pytest.raises(ValueError):
        multi_prime_bounds([2, 4])


def test_galateau_below_generic_lower():
    # the quadratic-denominator bound is much weaker than log(p/2)/(p+1)
    for p in primes_between(3, 47):
        assert galateau_bound(p).hi < theorem1_lower(p, D.Other).lo


def test_rows_to_csv():
    text = rows_to_csv([bounds_row(2), bounds_row(3)])
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["p", "lower_u", "lower_i", "lower_n", "upper_u", "upper_i", "upper_n", "status"]
    assert [r[0] for r in rows[1:]] == ["2", "3"]
    assert all(r[-1] == CERTIFIED for r in rows[1:])
    assert rows[2][1].startswith("[0.29406")


@pytest.mark.parametrize("p", [p for p in primes_between(7, 47) if p not in (17,)])
def test_g_cell_certifies_with_precision_doubling(p):
    # near p = 47 the gap between M(g) and p is below 2^-128
    c = g_upper_cell(p)
    assert c.status == CERTIFIED, c.certificates
