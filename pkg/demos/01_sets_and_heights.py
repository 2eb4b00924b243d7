"""Orthohedral sets: Boolean algebra, rank and height, germs."""

from orthohedral.lattice import indicator_data, invariants, max_germs, parse_set, skeleton
from orthohedral.lattice import BoxAtom

# A quadrant and a horizontal ray that pokes out of it to the left.
quad = parse_set("{[0+,0+]}")
ray = parse_set("{[(-3)+,2]}")

print("union       ", quad.union(ray))
print("intersection", quad.intersection(ray))
print("ray minus quadrant", ray.difference(quad))  # a finite bit: [-3..-1] x {2}

# Rank is the largest orthant dimension, height counts orthants of that rank.
for name, s in [("quadrant", quad), ("ray", ray), ("plane", parse_set("{[free,free]}")),
                ("three parallel rays", parse_set("{[0+,0..2]}"))]:
    inv = invariants(s)
    print(f"{name:20s} rank {inv.rank}  height {inv.height}")

# Maximal germs remember where a set goes to infinity.
s = parse_set("{[0+,0],[0+,1],[(-4)-,7]}")
for g in max_germs(s):
    print("germ", g)
print("height function", indicator_data(s).height_function)

# Skeletons of an octant: the n-faces of the coordinate cube's corner.
octant = BoxAtom.orthant([0, 0, 0], {0: 1, 1: 1, 2: 1})
print("heights of the skeleta of an octant:", [skeleton(octant, n).height for n in range(4)])
