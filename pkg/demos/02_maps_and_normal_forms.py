"""Piecewise translations, their heights, and normal forms of sets."""

from orthohedral.lattice import BoxAtom, parse_set
from orthohedral.maps import Isometry, PiecewiseMap, compose, injection_height, invert, validate
from orthohedral.normal_forms import are_pet_isomorphic, pei_normal_form, pet_normal_form

# Two parallel rays; feed the first ray's base point into the second ray.
s = parse_set("{[0+,0],[0+,1]}")
T = Isometry.translation
feed = PiecewiseMap(s, [(BoxAtom([(0, None), (1, 1)]), T([1, 0])),
                        (BoxAtom([(1, None), (0, 0)]), T([-1, 0])),
                        (BoxAtom([(0, 0), (0, 0)]), T([0, 1]))])
print("feed map flags:", validate(feed))
print("feed then its inverse is the identity:", validate(compose(feed, invert(feed))).bijective)

# Shifting one ray forward is an injection that misses one point per ray.
push = PiecewiseMap(s, [(BoxAtom([(0, None), (0, 0)]), T([1, 0])),
                        (BoxAtom([(0, None), (1, 1)]), T([0, 0]))])
print("height of the push:", injection_height(push))

# Normal forms: a quadrant with a stray ray is pet-equivalent to the quadrant.
messy = parse_set("{[0+,0+],[0+,(-5)]}")
nf = pet_normal_form(messy)
print("pet normal form:", nf.normalized)
# The plane needs isometries that flip axes; its pei normal form is a stack.
print("pei normal form of Z^2:", pei_normal_form(parse_set("{[free,free]}")).normalized)

a = parse_set("{[0+,0+],[3,(-2)-]}")
b = parse_set("{[4+,(-1)+],[7,(-3)-]}")
print("translated copies are pet-isomorphic:", are_pet_isomorphic(a, b) is not None)
