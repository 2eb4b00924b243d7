"""Boundaries at infinity and the finiteness length bounds report."""

import random

from orthohedral import generators as gen
from orthohedral.boundary import boundary_direction, fl_report, sigma_lift, theta
from orthohedral.lattice import BoxAtom, OrthohedralSet, parse_set, skeleton_stack
from orthohedral.maps import maps_equal

rays = OrthohedralSet(2, gen.stack([0, 0], {0: 1}, 1, 3), disjoint=True)
print("x-boundary of three rays:", boundary_direction(rays, 0))

# A pet permutation of the rays induces a permutation of their ends ...
rng = random.Random(2)
p = gen.random_pet_element(rng, rays)
print("induced boundary permutation:", theta(p, 0))
# ... and every permutation of the ends lifts back.
k = gen.point_transposition(boundary_direction(rays, 0), (0,), (2,))
print("lift projects back:", maps_equal(theta(sigma_lift(k, 0, rays), 0), k))

for s, flavor in [(rays, "pet"), (parse_set("{[free,free,free]}"), "pei")]:
    print(flavor, fl_report(s, flavor).as_dict())

comps = [BoxAtom.orthant([0, 0, 0, 3 * c], {0: 1, 1: 1, 2: 1}) for c in range(2)]
print("two 2-skeleta of octants:", fl_report(skeleton_stack(comps, 2), "pet").as_dict())
