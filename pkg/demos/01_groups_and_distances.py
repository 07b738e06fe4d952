"""
Permutations, groups and distances
==================================

Ordinal patterns live in Sym(L).  This walk-through composes and inverts
permutations, measures Cayley and Kendall distances, and transports those
distances to a group that is not a symmetric group.
"""

# %%
# One-line forms compose as functions: apply r first, then s.
from transcripta import (
    cayley_distance, cayley_embed, compose_right, distance_matrix, invert,
    kendall_distance, klein_group, admissible_distances, order_classes, symmetric_group,
)

r, s = "1423", "2341"
print("r*s     =", compose_right(r, s))
print("r^-1    =", invert(r))
print("d_C     =", cayley_distance(r, s))
print("d_K     =", kendall_distance(r, s))

# %%
# Sym(3) with its multiplication table and both distance matrices.
g = symmetric_group(3)
print(g.labels)
print(g.table)
print(distance_matrix(g, "cayley").to_csv())
print(distance_matrix(g, "kendall").to_csv())

# %%
# Orders of elements split the group into classes.
print({m: [g.labels[i] for i in idx] for m, idx in order_classes(g).items()})

# %%
# The Klein four-group has no native permutation distance.  Cayley's
# embedding sends each element to a permutation of its four elements, and
# the Kendall distance between the images becomes a distance on the group.
k = klein_group()
print([str(p) for p in cayley_embed(k)])
m = distance_matrix(k, "kendall")
print(m.to_csv())
adm = admissible_distances(m)
print("realised:", adm.values, " never realised:", adm.gaps)
