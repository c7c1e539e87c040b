"""
One algebra, several matroids
=============================

Gluing C_n to the fan G_m along different spokes gives matroids with
different longest circuits, all with algebras isomorphic to that of
C_n + M(G_m).
"""

from osforge.iso import demonstrate_corollary_cor

rep = demonstrate_corollary_cor(2, 6)

print("shared dimensions:", rep.shared_dims)
for mem in rep.members:
    print(f"spoke s{mem['i']}: longest circuit {mem['longest_circuit']}, certified {mem['certificate_accepted']}")
    for pair in mem["pairs"]:
        print("   ", pair)
print("pairwise non-isomorphic:", rep.pairwise_nonisomorphic)
