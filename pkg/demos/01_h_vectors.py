"""Generalized h-vectors of polytopes, from vertices to coefficients.

The h-polynomial of a complete fan is defined by a mutual recursion with
the g-polynomials of its cones.  This script builds a few polytopes,
looks at their face fans, and walks one level of the recursion by hand.
"""

from polyfan import cross_polytope, cube, face_fan, simplex
from polyfan.hvector import g_polynomial, h_polynomial, h_simplicial

# Every polytope here contains the origin in its interior, so the cones
# over its proper faces tile the whole space: a complete fan.
octahedron = cross_polytope(3)
fan = face_fan(octahedron)
print("octahedron f-vector:", octahedron.f_vector())
print("fan cones by dimension:", [len(fan.cones_of_dim(k)) for k in range(4)])
print("h =", h_polynomial(fan))

# All cones of the octahedron fan are simplicial, so the recursion
# collapses to the classical simplicial h-vector.
print("h via simplicial shortcut =", h_simplicial(fan))

# The cube is the first interesting non-simplicial case: each of its six
# facet cones is a cone over a square, whose g-polynomial is 1 + x.
box = cube(3)
box_fan = face_fan(box)
square_cone = box_fan.cones_of_dim(3)[0]
print("\ncube g(cone over square) =", g_polynomial(box_fan, square_cone))
print("cube h =", h_polynomial(box_fan))

# The recursion sees only the face poset: the quotient fan of the square
# cone is a complete 2-dimensional fan with four rays.
quotient = box_fan.quotient_fan(square_cone)
print("quotient fan of the square cone:", quotient)
print("h of the quotient fan =", h_polynomial(quotient))

# A non-symmetric example: simplices have h = (1, 1, ..., 1).
print("\nsimplex(3) h =", h_polynomial(face_fan(simplex(3))))

# The coefficient h_{n-1} always counts rays minus dimension.
for name, p in [("cube(4)", cube(4)), ("cross(4)", cross_polytope(4))]:
    f = face_fan(p)
    h = h_polynomial(f)
    rays = len(f.cones_of_dim(1))
    print(f"{name}: h = {h}, rays - n = {rays - p.ambient_dim} = h_(n-1)")
