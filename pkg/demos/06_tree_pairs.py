"""Tree pairs: vertex permutations of the dyadic tree and the map onto V."""

from orthohedral import encoding
from orthohedral.trees import (classify_forest, compose, compose_all, has_finite_support, invert,
                               is_identity, power, thompson_generators, to_v, vertex_transposition)

a, b = thompson_generators()
print("A as JSON:", encoding.dumps(encoding.tree_to_json(a)))

# The two defining relations of F.
ab = compose(a, invert(b))
for k in (1, 2):
    conj = compose_all([power(a, -k), b, power(a, k)])
    c = compose_all([invert(ab), invert(conj), ab, conj])
    print(f"commutator with the conjugate by A^{k} trivial:", is_identity(c))

# Swapping two vertices moves finitely many points, so it dies in V.
t = vertex_transposition("0010", "111")
print("transposition: finite support", has_finite_support(t), "image in V trivial", is_identity(to_v(t)))

for forest in ([{"kind": "T0"}, {"kind": "point"}, {"kind": "point"}],
               [{"kind": "T"}],
               [{"kind": "T0"}, {"kind": "T0"}, {"kind": "T0"}]):
    res = classify_forest(forest)
    print([c["kind"] for c in forest], "-> k =", res.k, "(copies shortcut:", res.copies_claim, ")")
