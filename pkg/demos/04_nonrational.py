"""The whole pipeline on a polytope with irrational vertex coordinates.

Toric geometry needs rational data, but the combinatorial theory does
not: every computation below runs in exact arithmetic over Q(sqrt(2)).
The polytope is the +-1 cube with two apexes at (0, 0, +-sqrt(2)).
"""

from fractions import Fraction

from polyfan import Polytope, Quadratic, cube, face_fan, support_function
from polyfan.hvector import check_cs_bounds, h_polynomial
from polyfan.ihsheaf import (
    build_mes,
    check_betti_equals_h,
    check_lefschetz_pattern,
    check_minus_lefschetz_pattern,
    ih_poincare,
    refined_series,
    sheaf_cs_report,
)

root2 = Quadratic(0, 1, 2)
vertices = list(cube(3).vertices)
vertices.append((Fraction(0), Fraction(0), root2))
vertices.append((Fraction(0), Fraction(0), -root2))
p = Polytope(vertices)

print("vertices:", len(p.vertices), " f-vector:", p.f_vector())
print("centrally symmetric:", p.is_centrally_symmetric())

# The apexes poke out of the cube (sqrt(2) > 1), so the top and bottom
# facets are replaced by eight triangles; four square facets survive.
fan = face_fan(p)
print("fan is complete over Q(sqrt 2):", fan.is_complete())

h = h_polynomial(fan)
print("\nh =", list(h))
bounds = check_cs_bounds(p)
print("difference against (1+x)^3:", list(bounds.difference))
print("bounds verified:", bounds.all_bounds_hold())

mes = build_mes(fan, 8)
print("\nBetti numbers:", list(ih_poincare(mes)))
print("Betti = h(t^2):", check_betti_equals_h(mes))
u_ref, _ = refined_series(mes)
print("reflection minus-part:", list(u_ref.minus))

s = support_function(p, fan)
print("Lefschetz pattern:", check_lefschetz_pattern(mes, s))
print("minus-restricted Lefschetz:", check_minus_lefschetz_pattern(mes, s))

report = sheaf_cs_report(p, 8)
print("\nfull lower-bound verification:", report.ok())
