"""
The polynomial families used for the upper bounds, and exact structural
checks on the degree p+1 self-reciprocal family.

Family identifiers have a canonical string form::

    fk:p=5,k=3   g:p=7   xpxp:p=3   xp1:p=3   quad2   quad3   selfrecip:p=5
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Iterator, Optional

from .padic import valuation
from .poly_exact import IntPoly, derivative, divmod_rational, gcd_primitive, reduce_mod
from .arith import is_prime


class InvalidParameter(ValueError):
    pass


@dataclass(frozen=True)
class FermatDecomposition:
    p: int
    n: int
    m: int

    @property
    def is_fermat(self) -> bool:
        return self.m == 1


def fermat_decompose(p: int) -> FermatDecomposition:
    """p - 1 = 2^n * m with m odd."""
    if p < 3:
        raise InvalidParameter("fermat_decompose needs p >= 3")
    m, n = p - 1, 0
    while m % 2 == 0:
        m //= 2
        n += 1
    return FermatDecomposition(p, n, m)


_TAGS = ("fk", "g", "xpxp", "xp1", "quad2", "quad3", "selfrecip")


@dataclass(frozen=True)
class FamilyId:
    tag: str
    p: Optional[int] = None
    k: Optional[int] = None

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise InvalidParameter(f"unknown family {self.tag!r}")
        if self.tag in ("quad2", "quad3"):
            return
        if self.p is None or not is_prime(self.p):
            raise InvalidParameter(f"{self.tag} needs a prime p, got {self.p}")
        if self.tag == "fk":
            if self.k is None or not 1 <= self.k <= self.p - 2:
                raise InvalidParameter(f"fk needs 1 <= k <= p-2, got k={self.k}")
        if self.tag == "g":
            if self.p < 3 or fermat_decompose(self.p).is_fermat:
                raise InvalidParameter(f"g is defined only for non-Fermat primes, got {self.p}")
        if self.tag == "selfrecip" and self.p == 2:
            raise InvalidParameter("selfrecip needs an odd prime")

    def __str__(self):
        if self.tag in ("quad2", "quad3"):
            return self.tag
        if self.tag == "fk":
            return f"fk:p={self.p},k={self.k}"
        return f"{self.tag}:p={self.p}"

    @classmethod
    def parse(cls, text: str) -> "FamilyId":
        text = text.strip().lower()
        m = re.fullmatch(r"([a-z0-9]+)(?::(.*))?", text)
        if not m:
            raise InvalidParameter(f"bad family id {text!r}")
        tag, rest = m.group(1), m.group(2)
        params = {}
        if rest:
            for item in rest.split(","):
                key, _, val = item.partition("=")
                try:
                    params[key.strip()] = int(val)
                except ValueError as exc:
                    raise InvalidParameter(f"bad parameter {item!r}") from exc
        return cls(tag, params.get("p"), params.get("k"))


def fk(p: int, k: int) -> IntPoly:
    """x^(p-1) - p x^k - 1."""
    return construct(FamilyId("fk", p, k))


def construct(fid: FamilyId) -> IntPoly:
    p = fid.p
    if fid.tag == "fk":
        c = [0] * p
        c[0], c[p - 1] = -1, 1
        c[fid.k] -= p
        return IntPoly(c)
    if fid.tag == "g":
        m = fermat_decompose(p).m
        c = [0] * (m + 1)
        c[0], c[m] = -1, 1
        c[m - 1] += p
        return IntPoly(c)
    if fid.tag == "xpxp":
        c = [0] * (p + 1)
        c[0], c[1], c[p] = p, -1, 1
        return IntPoly(c)
    if fid.tag == "xp1":
        c = [0] * p
        c[0] += p - 1
        c[p - 1] += 1
        return IntPoly(c)
    if fid.tag == "quad2":
        return IntPoly((-1, -8, 1))
    if fid.tag == "quad3":
        return IntPoly((-1, -3, 1))
    return self_reciprocal(p)


def self_reciprocal(p: int) -> IntPoly:
    """Degree p+1 self-reciprocal polynomial, assembled via the rewritten middle sum.

    sum_{i=2}^{(p-1)/2} (-1)^i (x^i + x^{p+1-i})
        = sum_{i=2}^{p-1} (-1)^i x^i + (-1)^{(p-1)/2} x^{(p+1)/2}
    """
    if p < 3 or p % 2 == 0:
        raise InvalidParameter("self_reciprocal needs an odd prime")
    h = (p + 1) // 2
    c = [0] * (p + 2)
    c[p + 1] += p
    c[p] -= h
    c[1] -= h
    c[0] += p
    for i in range(2, p):
        c[i] -= 1
        c[i] += p * (-1) ** i
    c[h] += p * (-1) ** ((p - 1) // 2)
    return IntPoly(c)


def self_reciprocal_direct(p: int) -> IntPoly:
    """Same polynomial, expanded term by term from its defining formula."""
    x = IntPoly.x()
    h = (p + 1) // 2
    f = IntPoly.monomial(p + 1, p) - IntPoly.monomial(p, h)
    for i in range(2, p):
        f = f - IntPoly.monomial(i)
    for i in range(2, (p - 1) // 2 + 1):
        f = f + (IntPoly.monomial(i) + IntPoly.monomial(p + 1 - i)) * (p * (-1) ** i)
    return f - x * h + p


# -- structural checks on the self-reciprocal family ---------------------------

def reduction_rhs(p: int) -> IntPoly:
    """-(p+1)/2 * x * prod_{i=2}^{p-2} (x - i) * (x + 1)^2, before reduction."""
    out = IntPoly.x() * (-((p + 1) // 2))
    for i in range(2, p - 1):
        out = out * IntPoly((-i, 1))
    return out * IntPoly((1, 2, 1))


def check_self_reciprocal_reduction(p: int) -> bool:
    return reduce_mod(self_reciprocal(p), p) == reduce_mod(reduction_rhs(p), p)


def lemma51_sums(n: int) -> tuple[int, int]:
    """(sum_{i=2}^{2n} (-1)^i i, sum_{i=2}^{2n} (-1)^i C(i,2)) by direct summation."""
    if n < 1:
        raise InvalidParameter("n must be positive")
    s1 = s2 = 0
    for i in range(2, 2 * n + 1):
        sgn = 1 if i % 2 == 0 else -1
        s1 += sgn * i
        s2 += sgn * comb(i, 2)
    return s1, s2


def lemma51_table(nmax: int) -> Iterator[tuple[int, int, int]]:
    """(n, s1, s2) for n = 1..nmax, accumulating the same sums term by term."""
    s1 = s2 = 0
    for n in range(1, nmax + 1):
        for i in (2 * n - 1, 2 * n):
            if i < 2:
                continue
            sgn = 1 if i % 2 == 0 else -1
            s1 += sgn * i
            s2 += sgn * comb(i, 2)
        yield n, s1, s2


@dataclass(frozen=True)
class Lemma52Check:
    """Exact data at a = 2p - 1 for the self-reciprocal f."""

    p: int
    val_f: int
    val_fprime: int
    fprime_mod_p2: int

    @property
    def f_vanishes_mod_p3(self) -> bool:
        return self.val_f >= 3

    @property
    def fprime_nonzero_mod_p2(self) -> bool:
        return self.fprime_mod_p2 != 0

    @property
    def fprime_is_minus_2p(self) -> bool:
        return self.fprime_mod_p2 == (-2 * self.p) % (self.p * self.p)

    @property
    def hensel_applies(self) -> bool:
        return self.val_f > 2 * self.val_fprime


def lemma52_data(p: int) -> Lemma52Check:
    f = self_reciprocal(p)
    a = 2 * p - 1
    fp = derivative(f)(a)
    return Lemma52Check(p, valuation(f(a), p), valuation(fp, p), fp % (p * p))


def lemma52_congruences(p: int) -> tuple[bool, bool]:
    """(v_p(f(2p-1)) >= 3, f'(2p-1) == -2p mod p^2), both decided exactly."""
    d = lemma52_data(p)
    return d.f_vanishes_mod_p3, d.fprime_is_minus_2p


def _reduce_exponents(f: IntPoly, n: int) -> IntPoly:
    """Remainder of f modulo x^n - 1."""
    c = [0] * n
    for i, a in enumerate(f.coeffs):
        c[i % n] += a
    return IntPoly(c)


def root_of_unity_modulus(p: int) -> IntPoly:
    """(x^(p-1) - 1) / (x^2 - 1): vanishes at the (p-1)-th roots of unity other than +-1."""
    return IntPoly([1 if i % 2 == 0 else 0 for i in range(p - 2)])


@dataclass(frozen=True)
class RootOfUnityForm:
    p: int
    identity_holds: bool
    f_at_1: int
    f_at_minus_1: int

    def __bool__(self):
        return self.identity_holds


def root_of_unity_form(p: int) -> RootOfUnityForm:
    """Check f(z) = p (z^2 + 1 + (-1)^((p-1)/2) z^((p+1)/2)) at every (p-1)-th root of unity z != +-1.

    The two geometric sums in f collapse only when z != +-1, so the identity
    is tested modulo (x^(p-1) - 1)/(x^2 - 1); the values at +-1 are returned
    separately.
    """
    f = self_reciprocal(p)
    rhs = (IntPoly.monomial(2) + 1
           + IntPoly.monomial((p + 1) // 2, (-1) ** ((p - 1) // 2))) * p
    mod = root_of_unity_modulus(p)
    # fold exponents mod p-1 first, then divide by the remaining factor
    diff = _reduce_exponents(f - rhs, p - 1)
    _, r = divmod_rational(diff, mod)
    return RootOfUnityForm(p, not r, f(1), f(-1))


def cyclotomic_factor_test(p: int) -> Optional[IntPoly]:
    """Primitive gcd of the self-reciprocal f with x^(p-1) - 1, or None if trivial."""
    g = gcd_primitive(self_reciprocal(p), IntPoly.monomial(p - 1) - 1)
    return g if g.degree > 0 else None
