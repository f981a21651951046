"""Brute-force verification of the engine on a 4x4 GF(2) instance.

The nilpotent below has block sizes (3,1): two distinct sizes, each
appearing once, differing by at least two.  Over GF(2) that is exactly
the situation where a characteristic subspace can fail to be
hyperinvariant -- the oracle enumerates all 67 subspaces of GF(2)^4 and
finds the single extra member <e2+e4, e3>.
"""

from invlat import Matrix, chinv_lattice, classify_all, gf_build, hinv_lattice
from invlat.subspace import subspace_label

F2 = gf_build(2)
N = Matrix(F2, [
    [0, 0, 0, 0],
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 0],
])

oracle = classify_all(N)
print("total subspaces of GF(2)^4:", oracle.total_subspaces)
print("invariant:", len(oracle.invariant),
      "| hyperinvariant:", len(oracle.hyperinvariant),
      "| characteristic:", len(oracle.characteristic))

extra = set(oracle.characteristic) - set(oracle.hyperinvariant)
print("characteristic but not hyperinvariant:",
      [subspace_label(w) for w in extra])

engine_h = hinv_lattice(N).member_set()
engine_c = chinv_lattice(N).member_set()
print("\nengine matches oracle:",
      engine_h == set(oracle.hyperinvariant) and engine_c == set(oracle.characteristic))

# the same shape over GF(3) has no extra member: |F| > 2
F3 = gf_build(3)
N3 = Matrix(F3, [
    [0, 0, 0, 0],
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 0],
])
o3 = classify_all(N3)
print("\nsame block sizes over GF(3): characteristic == hyperinvariant:",
      set(o3.characteristic) == set(o3.hyperinvariant))
