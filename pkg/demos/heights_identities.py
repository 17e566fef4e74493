"""
Heights through resultants
==========================

h(f(a)) is read off the polynomial Res_y(m(y), x - f(y)), whose primitive
part is a power of the minimal polynomial of f(a).
"""

from tpheights.heights import AlgebraicNumberRep, check_height_image_bound, height, height_of_image
from tpheights.poly_exact import IntPoly, format_poly
from tpheights.heights import image_polynomial

a = AlgebraicNumberRep(IntPoly((-1, -8, 1)), True)  # 4 + sqrt 17
h = height(a).value
print("h(a)   =", float(h.mid))

sq = IntPoly.monomial(2)
print("R(x)   =", format_poly(image_polynomial(a.minpoly, sq)))
print("h(a^2) =", float(height_of_image(a, sq).value.mid), " 2h(a) =", float((h * 2).mid))

# the image bound h(f(a)) <= deg f h(a) + log ||f||
f = IntPoly.from_roots((4, 1, -2))
chk = check_height_image_bound(a, f)
print("h(f(a)) =", float(chk.lhs.mid), "<=", float(chk.rhs.mid), chk.holds)

# roots of unity have height zero
for c in ((1, 1, 1), (1, 0, 1), (-1, 1)):
    print(format_poly(IntPoly(c)), height(IntPoly(c)).value)
