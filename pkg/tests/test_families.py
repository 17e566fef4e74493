from __future__ import annotations

import pytest

from tpheights.arith import primes_between
from tpheights.families import (FamilyId, InvalidParameter, check_self_reciprocal_reduction,
                                construct, cyclotomic_factor_test, fermat_decompose, fk,
                                lemma51_sums, lemma51_table, lemma52_data, reduction_rhs, root_of_unity_form,
                                self_reciprocal, self_reciprocal_direct)
from tpheights.padic import valuation
from tpheights.poly_exact import IntPoly, reciprocal, reduce_mod

ODD_PRIMES_101 = primes_between(3, 101)


def test_construct_examples():
    assert self_reciprocal(3) == IntPoly((3, -2, -1, -2, 3))
    assert fk(5, 3) == IntPoly((-1, 0, 0, -5, 1))
    assert construct(FamilyId("xpxp", 3)) == IntPoly((3, -1, 0, 1))
    assert construct(FamilyId("xp1", 3)) == IntPoly((2, 0, 1))
    assert construct(FamilyId("g", 7)) == IntPoly((-1, 0, 7, 1))
    assert construct(FamilyId("quad2")) == IntPoly((-1, -8, 1))
    assert construct(FamilyId("quad3")) == IntPoly((-1, -3, 1))


@pytest.mark.parametrize("text", ["fk:p=5,k=3", "g:p=7", "xpxp:p=3", "xp1:p=3", "quad2",
                                  "quad3", "selfrecip:p=5"])
def test_family_id_round_trip(text):
    assert str(FamilyId.parse(text)) == text


@pytest.mark.parametrize("text", ["g:p=17", "fk:p=5,k=4", "fk:p=5,k=0", "xpxp:p=9",
                                  "selfrecip:p=2", "cubic:p=3", "fk:p=x"])
def test_family_id_invalid(text):
    with pytest.raises(InvalidParameter):
        FamilyId.parse(text)


@pytest.mark.parametrize("p", ODD_PRIMES_101)
def test_self_reciprocal_structure(p):
    f = self_reciprocal(p)
    assert f == self_reciprocal_direct(p)
    assert reciprocal(f) == f
    assert f.degree == p + 1 and f.lc == p and f[0] == p
    assert check_self_reciprocal_reduction(p)


def test_reduction_examples():
    assert reduce_mod(self_reciprocal(3), 3) == IntPoly((0, 1, 2, 1))
    assert reduce_mod(reduction_rhs(3), 3) == IntPoly((0, 1, 2, 1))
    assert check_self_reciprocal_reduction(5) and check_self_reciprocal_reduction(13)


def test_lemma51_examples():
    assert lemma51_sums(1) == (2, 1)
    assert lemma51_sums(2) == (3, 4)
    assert lemma51_sums(10) == (11, 100)


def test_lemma51_closed_forms_to_1000():
    for n in range(1, 1001):
        assert lemma51_sums(n) == (1 + n, n * n)


def test_lemma51_table_matches_direct_sums():
    for n, s1, s2 in lemma51_table(300):
        assert (s1, s2) == lemma51_sums(n)


@pytest.mark.parametrize("p", ODD_PRIMES_101)
def test_lemma52_hensel_hypothesis(p):
    d = lemma52_data(p)
    assert d.f_vanishes_mod_p3
    assert d.val_fprime == 1 and d.fprime_nonzero_mod_p2
    assert d.hensel_applies


@pytest.mark.parametrize("p", ODD_PRIMES_101)
def test_lemma52_exact_derivative_residue(p):
    # the exact residue of f'(2p-1) mod p^2 is -p
    assert lemma52_data(p).fprime_mod_p2 == (-p) % (p * p)


@pytest.mark.parametrize("p", ODD_PRIMES_101)
def test_root_of_unity_form(p):
    r = root_of_unity_form(p)
    assert r.identity_holds
    f = self_reciprocal(p)
    assert r.f_at_1 == f(1) and r.f_at_minus_1 == f(-1)


def test_fk_reduces_to_fermat_polynomial():
    for p in primes_between(3, 23):
        for k in range(1, p - 1):
            assert reduce_mod(fk(p, k), p) == reduce_mod(IntPoly.monomial(p - 1) - 1, p)


def test_cyclotomic_factor_only_x2_x_1():
    for p in primes_between(3, 199):
        g = cyclotomic_factor_test(p)
        if p % 12 == 1:
            assert g == IntPoly((1, 1, 1)), p
        else:
            assert g is None, p


@pytest.mark.parametrize("p, n, m, fermat", [(17, 4, 1, True), (7, 1, 3, False), (13, 2, 3, False),
                                             (3, 1, 1, True)])
def test_fermat_decompose(p, n, m, fermat):
    d = fermat_decompose(p)
    assert (d.n, d.m, d.is_fermat) == (n, m, fermat)
    assert 2 ** d.n * d.m == p - 1


def test_self_reciprocal_value_at_hensel_point_valuation():
    for p in (3, 5, 7):
        assert valuation(self_reciprocal(p)(2 * p - 1), p) >= 3
