"""
Hyperplane arrangements: decone and parallel connection
=======================================================

"""

from osforge.arrangements import (Arrangement, LinearForm, arr_direct_sum, arr_parallel_connection, decone,
                                  defining_polynomial, rename_arrangement, realize_generic, underlying_matroid,
                                  verify_theorem_homo_identity)

# x, y, x - y
braid = Arrangement(("x", "y"), (LinearForm({"x": 1}), LinearForm({"y": 1}), LinearForm({"x": 1, "y": -1})))
print("Q =", defining_polynomial(braid))
print("circuits:", underlying_matroid(braid).circuit_label_sets())

# set x = 1: the affine arrangement {y, 1 - y}
d = decone(braid, 0)
print("decone:", [str(f) for f in d.forms], "Q =", defining_polynomial(d))

# three generic lines, and a second copy with its own labels
a0 = realize_generic(3)
a1 = Arrangement(a0.variables, tuple(LinearForm(f.coeffs, 0, "b" + f.label) for f in a0.forms))

p = arr_parallel_connection(a0, a1)
print("P(A0, A1) in", p.variables, "with", len(p.forms), "hyperplanes")
print("Q(P) =", defining_polynomial(p))

# decone of the parallel connection = product of the two decones
lhs = defining_polynomial(decone(p, 0))
rhs = defining_polynomial(arr_direct_sum(decone(a0, 0), rename_arrangement(decone(a1, 0), {"x2": "y2"})))
print(lhs, "==", rhs, ":", lhs == rhs)

rep = verify_theorem_homo_identity(a0, a1)
print("report:", rep.ok, rep.punctured_line_factors)
