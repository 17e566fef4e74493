"""
A self-reciprocal family of totally p-adic polynomials
=====================================================

For odd p the polynomial of degree p + 1 with leading and constant
coefficient p has every root in Q_p. When its measure is small enough it
gives the upper bound log M / (p + 1) for the smallest height.
"""

from tpheights.bounds import COROLLARY_PRIMES, verify_corollary_S
from tpheights.families import cyclotomic_factor_test, lemma52_data, root_of_unity_form, self_reciprocal
from tpheights.poly_exact import format_poly
from tpheights.roots_certified import all_roots_on_unit_circle

for p in (3, 5, 7):
    f = self_reciprocal(p)
    print(p, format_poly(f), " all roots on |z|=1:", all_roots_on_unit_circle(f))

# the Hensel data at 2p - 1: v(f) >= 3 and v(f') = 1; the derivative is -p mod p^2
for p in (3, 5, 7, 11):
    d = lemma52_data(p)
    print(f"p={p}: v(f)={d.val_f} v(f')={d.val_fprime} f' mod p^2 = {d.fprime_mod_p2} (-p = {(-p) % (p*p)})")

# at (p-1)-th roots of unity the polynomial collapses to a trinomial
print("trinomial identity:", all(root_of_unity_form(p).identity_holds for p in (3, 5, 7, 11, 13)))

# x^2 + x + 1 divides it exactly when p = 1 mod 12
print("cyclotomic factor:", {p: format_poly(g) for p in range(3, 80)
                             if p in (13, 37, 61, 73) and (g := cyclotomic_factor_test(p))})

# the strict inequality log M/(p+1) < log p / p, certified prime by prime
for p in COROLLARY_PRIMES + (43,):
    c = verify_corollary_S(p)
    print(f"p={p:2d} {c.status:9s} lhs={float(c.lhs.mid):.6f} rhs={float(c.rhs.mid):.6f}")
