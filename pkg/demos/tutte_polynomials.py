"""
Tutte polynomials of a cycle family
===================================

Two matroids on the same ground set size with the same characteristic
polynomial but different Tutte polynomials.
"""

from osforge.constructions import FamilySpec, build_Mn, build_Mn_prime, cycle_matroid_Cn
from osforge.tutte import characteristic, tutte

# polygons follow x + x^2 + ... + x^(n-1) + y
for n in range(2, 7):
    print(f"T(C{n}) =", tutte(cycle_matroid_Cn(n)))

# a triangle seed with basepoint "1"; the family member n = 3
spec = FamilySpec(cycle_matroid_Cn(3), "1", 3)
mn, mnp = build_Mn(spec), build_Mn_prime(spec)

# M_n is C_3 + C_3, M'_n glues the two triangles and adds an isthmus p
print(mn)
print(mnp)

t, tp = tutte(mn), tutte(mnp)
print("T(M)  =", t)
print("T(M') =", tp)
print("difference:", t - tp)   # y(x + y - xy), expanded

# ... but chi(t) = T(1 - t, 0) agrees
print("chi(M)  =", characteristic(mn))
print("chi(M') =", characteristic(mnp))
