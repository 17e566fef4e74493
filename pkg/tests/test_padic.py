from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import classify_residues, is_square_qp, lower_hull
from tpheights.families import FamilyId, construct, self_reciprocal
from tpheights.padic import (INF, count_distinct_qp_roots, hensel_lift, newton_polygon,
                             quadratic_splits, reduction_simple_roots, strong_hensel_check,
                             valuation)
from tpheights.poly_exact import IntPoly, derivative

PRIMES = (2, 3, 5, 7, 11, 13)
coeff = st.integers(-50, 50)
poly_st = st.lists(coeff, min_size=2, max_size=7).filter(lambda c: c[-1] != 0).map(IntPoly)


def test_valuation_examples():
    assert valuation(12, 2) == 2
    assert valuation(self_reciprocal(5)(9), 5) >= 3
    assert valuation(0, 7) == INF


def test_newton_polygon_examples():
    for p in (3, 5, 7, 101):
        assert newton_polygon(self_reciprocal(p), p).as_list() == [(-1, 1), (0, p - 1), (1, 1)]
    assert newton_polygon(IntPoly((-5, 0, 1)), 5).as_list() == [(Fraction(-1, 2), 2)]


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_newton_polygon_fk_matches_hull_oracle(p):
    f = construct(FamilyId("fk", p, p - 2))
    pts = [(i, valuation(a, p)) for i, a in enumerate(f.coeffs) if a]
    assert newton_polygon(f, p).as_list() == lower_hull(pts)
    # constant and leading terms are units, so the hull is flat
    assert newton_polygon(f, p).as_list() == [(0, p - 1)]


@given(poly_st.filter(lambda f: f[0] != 0), st.sampled_from(PRIMES))
def test_newton_polygon_bookkeeping(f, p):
    poly = newton_polygon(f, p)
    pts = [(i, valuation(a, p)) for i, a in enumerate(f.coeffs) if a]
    assert poly.as_list() == lower_hull(pts)
    assert sum(n * s for s, n in poly) == valuation(f.lc, p) - valuation(f[0], p)
    assert sum(n for _, n in poly) == f.degree
    slopes = [s for s, _ in poly]
    assert slopes == sorted(set(slopes))


def test_residue_classification_examples():
    cls = reduction_simple_roots(self_reciprocal(5), 5)
    assert {r for r, c in cls.items() if c == "SimpleRoot"} == {0, 2, 3}
    assert {r for r, c in cls.items() if c == "MultipleRoot"} == {4}
    assert reduction_simple_roots(IntPoly((-1, 0, 1)), 2) == {0: "NotRoot", 1: "MultipleRoot"}
    cls = reduction_simple_roots(IntPoly((2, 0, 1)), 3)
    assert cls == {0: "NotRoot", 1: "SimpleRoot", 2: "SimpleRoot"}


@given(poly_st, st.sampled_from(PRIMES))
def test_residue_classification_matches_brute_force(f, p):
    assert reduction_simple_roots(f, p) == classify_residues(list(f.coeffs), p)


@given(poly_st, st.sampled_from(PRIMES))
def test_simple_lift_count_matches_brute_force(f, p):
    f = f.primitive()
    cert = count_distinct_qp_roots(f, p)
    n_simple = sum(1 for e in cert.evidence if e.kind == "SimpleResidueLift")
    assert n_simple == sum(1 for c in classify_residues(list(f.coeffs), p).values() if c == "SimpleRoot")


def test_strong_hensel_examples():
    ev = strong_hensel_check(self_reciprocal(5), 5, 9)
    assert ev is not None and ev.val_f >= 3 and ev.val_fprime == 1
    assert strong_hensel_check(IntPoly((-1, 0, 1)), 3, 1) is not None
    assert strong_hensel_check(IntPoly((1, 0, 1)), 3, 1) is None


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_hensel_lift_is_a_root(p):
    f = self_reciprocal(p)
    x = hensel_lift(f, p, 2 * p - 1, 12)
    assert f(x) % p ** 12 == 0
    assert (x - (2 * p - 1)) % p ** 2 == 0


def test_splitting_examples():
    assert count_distinct_qp_roots(construct(FamilyId("fk", 5, 1)), 5).conclusion == "SplitsCompletely"
    assert count_distinct_qp_roots(construct(FamilyId("xpxp", 3)), 3).conclusion == "SplitsCompletely"
    cert = count_distinct_qp_roots(self_reciprocal(5), 5)
    assert cert.conclusion == "SplitsCompletely"
    assert cert.distinct_root_count >= 5
    kinds = [e.kind for e in cert.evidence]
    assert kinds.count("SimpleResidueLift") == 3 and kinds.count("PolygonUnitSegment") == 1
    hensel = [e for e in cert.evidence if e.kind == "StrongHensel"]
    assert any(e.point == 9 and e.val_f >= 3 and e.val_fprime == 1 for e in hensel)
    assert count_distinct_qp_roots(IntPoly((1, 0, 1)), 3).conclusion == "Inconclusive"


def test_hensel_disks_pairwise_disjoint():
    for p in (3, 5, 7, 11, 13):
        cert = count_distinct_qp_roots(self_reciprocal(p), p)
        pts = [e for e in cert.evidence if e.kind == "StrongHensel"]
        for i, a in enumerate(pts):
            for b in pts[i + 1:]:
                assert valuation(a.point - b.point, p) < min(a.hensel_radius(), b.hensel_radius())


@settings(max_examples=40)
@given(st.sampled_from((3, 5, 7, 11)), st.data())
def test_products_of_linear_factors_split(p, data):
    n = data.draw(st.integers(1, p))
    residues = data.draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n, unique=True))
    shifts = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    f = IntPoly((1,))
    for r, s in zip(residues, shifts):
        f = f * IntPoly((-(r + s * p), 1))
    cert = count_distinct_qp_roots(f, p)
    assert cert.distinct_root_count >= n
    assert cert.conclusion == "SplitsCompletely"


@pytest.mark.parametrize("abc, p, expected", [
    ((1, -8, -1), 2, True),
    ((1, -3, -1), 3, True),
    ((1, -1, 1), 5, False),
    ((1, 2, 1), 7, True),   # double root
    ((1, 0, -2), 7, True),  # 2 = 3^2 mod 7
    ((1, 0, -3), 3, False),
])
def test_quadratic_splits_examples(abc, p, expected):
    assert quadratic_splits(*abc, p) is expected


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_quadratic_splits_exhaustive_oracle(p):
    rng = range(-10, 11)
    for a in rng:
        if a == 0:
            continue
        for b in rng:
            for c in rng:
                D = b * b - 4 * a * c
                assert quadratic_splits(a, b, c, p) == is_square_qp(D, p), (a, b, c, p)


def test_evidence_serializes():
    d = count_distinct_qp_roots(self_reciprocal(5), 5).to_dict()
    assert d["conclusion"] == "SplitsCompletely"
    assert {"kind": "StrongHensel", "point": "9", "val_f": 3, "val_fprime": 1} in d["evidence"]


def test_derivative_valuation_rule():
    # a Hensel point with v(f') = 0 is a simple lift and must not be double counted
    f = IntPoly.from_roots((1, 2))
    cert = count_distinct_qp_roots(f, 5)
    assert cert.distinct_root_count == 2
    assert all(e.kind == "SimpleResidueLift" for e in cert.evidence)
    assert derivative(f)(1) % 5 != 0
