"""
Counting roots in Q_p
=====================

A polynomial of degree d splits over Q_p once d - 1 distinct roots are
certified. The evidence comes from three places: simple roots mod p, strong
Hensel points and unit-length segments of the Newton polygon.
"""

from tpheights.families import FamilyId, construct, self_reciprocal
from tpheights.padic import (count_distinct_qp_roots, hensel_lift, newton_polygon,
                             quadratic_splits, reduction_simple_roots)
from tpheights.poly_exact import IntPoly, format_poly

p = 5
f = self_reciprocal(p)
print("f =", format_poly(f))

# residues: simple roots lift uniquely, the multiple one needs more work
print("mod 5:", reduction_simple_roots(f, p))

# the polygon has a slope -1 and a slope +1 segment of length one
print("Newton polygon:", newton_polygon(f, p).as_list())

cert = count_distinct_qp_roots(f, p)
for e in cert.evidence:
    print("  ", e.to_dict())
print(cert.conclusion, "with", cert.distinct_root_count, "of", f.degree, "roots")

# lift the root near 2p - 1 = 9 to 20 digits of 5-adic precision
x = hensel_lift(f, p, 2 * p - 1, 20)
print("root = 9 + ... :", x, " f(root) mod 5^20 =", f(x) % p ** 20)

# quadratics are decided exactly by the discriminant
print("x^2-8x-1 over Q_2:", quadratic_splits(1, -8, -1, 2))
print("x^2+1 over Q_3:", quadratic_splits(1, 0, 1, 3))

# x^p - x + p splits for every p, with one root divisible by p
for q in (3, 7, 11):
    print(f"x^{q}-x+{q}:", count_distinct_qp_roots(construct(FamilyId("xpxp", q)), q).conclusion)
