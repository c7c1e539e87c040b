"""
Orlik-Solomon algebras: nbc bases and dimensions
================================================

"""

from osforge.constructions import complete_graph, cycle_matroid_Cn, graphic_matroid
from osforge.exterior import ExteriorElement
from osforge.os_algebra import OSAlgebra, graded_dimensions, ideal_membership, whitney_dimension_oracle
from osforge.tutte import poincare_dims

c3 = cycle_matroid_Cn(3)
a = OSAlgebra(c3)

# nbc monomials, by degree; generators are element ids 0, 1, 2 (labels 1, 2, 3)
for p, basis in enumerate(a.nbc_basis):
    print(p, basis)

# e2 e3 is not nbc; rewriting with the circuit boundary gives
e = ExteriorElement.gen
x = e(1) * e(2)
print(x.format(c3.labels), "->", a.normal_form(x).format(c3.labels))

# the boundary of the whole circuit is in the ideal
res = ideal_membership(a, e(0) * e(1) - e(0) * e(2) + e(1) * e(2))
print("member:", res.member, "with", len(res.witness), "witness term(s)")

# graded dimensions three ways: nbc counts, quotient ranks (verify=True), and chi
k4 = graphic_matroid(complete_graph(4))
print("K4:", graded_dimensions(OSAlgebra(k4), verify=True))
print("   from chi:", poincare_dims(k4))
print("   from the flat lattice:", whitney_dimension_oracle(k4))
