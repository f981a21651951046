"""The three subspace lattices of the 8x8 GF(2) instance.

The minimal polynomial is (x^2+x+1)^3: a single primary component whose
semisimple part generates a field K isomorphic to GF(4).  Over K the
nilpotent part has Segre characteristic (3,1), the hyperinvariant and
characteristic lattices coincide (|K| > 2), and both have six members.
"""

from invlat import Matrix, chinv_lattice, gf_build, hinv_lattice, inv_lattice, to_dot
from invlat.subspace import subspace_label

F2 = gf_build(2)
A = Matrix(F2, [
    [0, 1, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 0, 0],
    [0, 1, 1, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 1, 0, 0],
    [0, 0, 0, 1, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 1],
])

for name, fn in (("invariant", inv_lattice), ("hyperinvariant", hinv_lattice),
                 ("characteristic", chinv_lattice)):
    rep = fn(A)
    print(f"{name}: {len(rep.members)} members")
    if name != "invariant":
        for w in rep.members:
            print("   ", subspace_label(w))
    print()

print("provenance of the characteristic computation:")
for line in chinv_lattice(A).provenance:
    print("   -", line)

print("\nHasse diagram of the hyperinvariant lattice (DOT):\n")
print(to_dot(hinv_lattice(A).lattice))
