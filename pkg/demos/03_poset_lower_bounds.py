"""Diagonal injections, the order they generate, and common lower bounds."""

import random

from orthohedral import generators as gen
from orthohedral.lattice import parse_set
from orthohedral.maps import compose, injection_height
from orthohedral.poset import common_lower_bound, leq, lower_bound_conditions, make_maximal, orthant_basis

stack = parse_set("{[0+,0],[0+,1],[0+,2]}")
basis = orthant_basis(stack)
rng = random.Random(0)

# f moves every ray forward twice; pushing further gives larger elements.
f = gen.diagonal_element(rng, basis, [2, 2, 2])
g = compose(basis.unit_power([1, 0, 2]), f)
print("g lies above f with exponents", leq(basis, f, g).exponents)

# Maximal elements below f: give back one unit's worth of boundary.
b1 = make_maximal(basis, f, 0, gen.boundary_injection(basis, [2, 2, 2], 0, 2, 0))
b2 = make_maximal(basis, f, 1, gen.boundary_injection(basis, [2, 2, 2], 1, 2, 1))
print("heights f, b1, b2:", injection_height(f), injection_height(b1), injection_height(b2))

cond = lower_bound_conditions(basis, [b1, b2], f)
print("conditions:", cond)
delta = common_lower_bound(basis, [b1, b2], f)
print("common lower bound height:", injection_height(delta))

# Reusing ray 0 for the second element breaks the first condition.
clash = make_maximal(basis, f, 0, gen.boundary_injection(basis, [2, 2, 2], 0, 1, 1))
print("with a repeated unit:", common_lower_bound(basis, [b1, clash], f))
