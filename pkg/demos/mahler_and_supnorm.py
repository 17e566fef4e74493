"""
Certified Mahler measures and sup-norms
=======================================

Every number printed here is an enclosure [lo, hi] with rational endpoints.
"""

from fractions import Fraction

from tpheights.poly_exact import IntPoly, parse_poly
from tpheights.roots_certified import enclose_roots, mahler_measure, supnorm_unit_circle

# x^3 - x + 3 has all three roots outside the unit disk, so M = |f(0)| = 3
f = parse_poly("x^3-x+3")
res = mahler_measure(f)
print("M(x^3-x+3) =", res.measure, " outside:", res.outside_count)

# the root disks themselves: centre, radius and whether they clear the circle
for d in enclose_roots(f):
    print(f"  root ~ {complex(d.approx()):.6f}  radius {float(d.radius):.1e}  outside: {d.outside_unit_disk()}")

# a quadratic whose measure is the larger root 4 + sqrt 17
q = IntPoly((-1, -8, 1))
print("M(x^2-8x-1) =", mahler_measure(q).measure)

# sup-norm of (x-4)(x-1)(x+2) on |z| = 1, the constant behind the 3-adic scheme
s = supnorm_unit_circle(IntPoly.from_roots((4, 1, -2)))
print("||(x-4)(x-1)(x+2)|| =", s, " width", float(s.width))

# its square is 135/2 + (189/4) sqrt 7; check the enclosure against that exactly
t_lo = (s.lo ** 2 - Fraction(135, 2)) * Fraction(4, 189)
t_hi = (s.hi ** 2 - Fraction(135, 2)) * Fraction(4, 189)
print("sqrt 7 squeezed into", float(t_lo), float(t_hi), t_lo ** 2 <= 7 <= t_hi ** 2)
