import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from orthohedral import generators as gen
from orthohedral.lattice import (BoxAtom, Germ, OrthohedralSet, germ_count_at_rank, max_germs,
                                 parse_set, skeleton)
from orthohedral.maps import (Isometry, MapError, PiecewiseMap, compose, compose_all, germ_action,
                              has_finite_support, image_set, injection_height, invert, kappa,
                              maps_equal, parallel_height, series_membership, validate)
from orthohedral.poset import component_basis, diagonal_vector
from orthohedral.window import check_bijection, max_coordinate


def S(text, n=None):
    return parse_set(text, n)


def T(*v):
    return Isometry.translation(list(v))


def two_ray_feed():
    s = S("{[0+,0],[0+,1]}")
    return PiecewiseMap(s, [(BoxAtom([(0, None), (1, 1)]), T(1, 0)),
                            (BoxAtom([(1, None), (0, 0)]), T(-1, 0)),
                            (BoxAtom([(0, 0), (0, 0)]), T(0, 1))])


def diagonal_unit(s):
    return PiecewiseMap(s, [(o, T(*diagonal_vector(o))) for o in s.atoms])


def test_validate_examples():
    f = PiecewiseMap(S("{[0+]}"), [(BoxAtom([(0, None)]), T(1))])
    fl = validate(f)
    assert fl.injective and fl.pet and not fl.bijective

    g = two_ray_feed()
    fl = validate(g)
    assert fl.bijective and fl.pet
    table = O.map_table(g, 12)
    window = {p for p in table if p[0] >= 0 and p[0] <= 11}
    assert {table[p] for p in window} <= O.members(g.domain, 13)
    assert len(set(table.values())) == len(table)
    assert {p for p in O.members(g.domain, 12) if p[0] <= 11} <= set(table.values())

    neg = PiecewiseMap(S("{[free]}"), [(BoxAtom([(0, None)]), Isometry([(0, -1)], [0])),
                                       (BoxAtom([(None, -1)]), Isometry([(0, -1)], [0]))])
    fl = validate(neg)
    assert fl.bijective and not fl.pet


def test_validate_rejects_bad_partitions():
    s = S("{[0+]}")
    with pytest.raises(MapError):
        validate(PiecewiseMap(s, [(BoxAtom([(0, None)]), T(0)), (BoxAtom([(3, None)]), T(0))], merge=False))
    with pytest.raises(MapError):
        validate(PiecewiseMap(s, [(BoxAtom([(1, None)]), T(0))]))


def test_compose_and_invert():
    g = two_ray_feed()
    assert maps_equal(compose(g, invert(g)), PiecewiseMap.identity(g.domain))
    h = compose(g, g)
    t1, t2 = O.map_table(g, 10), O.map_table(h, 8)
    for p, q in t2.items():
        assert q == O.point_image(g, t1[p])


def test_image_set_examples():
    s = S("{[0+,0+],[(-1)-,3]}")
    assert image_set(PiecewiseMap.identity(s)) == s
    assert image_set(PiecewiseMap(S("{[0+]}"), [(BoxAtom([(0, None)]), T(1))])) == S("{[1+]}")


def test_injection_height_examples():
    q = S("{[0+,0+]}")
    t = diagonal_unit(q)
    assert injection_height(t) == 2
    assert injection_height(PiecewiseMap.identity(q)) == 0
    assert injection_height(compose(t, t)) == 4
    # a pei self-injection always leaves a lower-rank complement; a map
    # leaving S is rejected
    with pytest.raises(MapError):
        injection_height(PiecewiseMap(S("{[0+]}"), [(BoxAtom([(0, None)]), T(-1))]))


def test_parallel_height_on_skeleton_component():
    octant = BoxAtom.orthant([0, 0, 0], {0: 1, 1: 1, 2: 1})
    b = component_basis(skeleton(octant, 2))
    f = b.unit(0)
    assert all(parallel_height(f, {y}) == 2 for y in range(3))
    assert sum(parallel_height(f, {y}) for y in range(3)) == injection_height(f) == 6
    assert parallel_height(PiecewiseMap.identity(b.domain), {0}) == 0


def test_germ_action_examples():
    st3 = S("{[0+,0],[0+,1],[0+,2]}")
    ident = germ_action(PiecewiseMap.identity(st3))
    assert all(k == v for k, v in ident.items())
    swap = gen.orthant_swap(st3, BoxAtom.orthant([0, 0], {0: 1}), BoxAtom.orthant([0, 2], {0: 1}))
    act = germ_action(swap)
    g0, g1, g2 = (Germ([(0, 1)], [(1, y)]) for y in range(3))
    assert act[g0] == g2 and act[g2] == g0 and act[g1] == g1
    rng = random.Random(5)
    for _ in range(20):
        p = gen.random_pet_element(rng, st3)
        assert all(k.indicator == v.indicator for k, v in germ_action(p).items())


def test_finite_support_examples():
    s = S("{[0+,0+]}")
    assert has_finite_support(gen.point_transposition(s, (0, 0), (3, 4)))
    z = S("{[free]}")
    assert not has_finite_support(PiecewiseMap(z, [(BoxAtom([(None, None)]), T(1))]))
    rng = random.Random(1)
    for _ in range(10):
        p = gen.finitary_permutation(rng, s, swaps=3)
        moved = [x for x, y in O.map_table(p, 9).items() if x != y]
        assert has_finite_support(p) and len(moved) <= 6


def test_series_membership_examples():
    s = S("{[0+,0+]}")
    lv = series_membership(gen.point_transposition(s, (0, 0), (1, 2)), 1)
    assert lv.in_k
    z2 = S("{[free,free]}")
    swap = PiecewiseMap.from_isometry(z2, Isometry([(1, 1), (0, 1)], [0, 0]))
    assert not series_membership(swap, 2).in_c
    quad = BoxAtom.orthant([0, 0], {0: 1, 1: 1})
    rest = z2.difference(OrthohedralSet(2, [quad]))
    shift = PiecewiseMap(z2, [(quad, T(1, 1))] + [(a, T(0, 0)) for a in rest.atoms])
    lv = series_membership(shift, 2)
    assert lv.in_c and not lv.in_k
    with pytest.raises(MapError):
        series_membership(shift, 3)


def test_kappa_examples():
    s = S("{[0+,0+],[(-1)-,0+]}")
    t = PiecewiseMap(s, [(BoxAtom([(0, None), (0, None)]), T(1, 1)), (BoxAtom([(None, -1), (0, None)]), T(0, 0))])
    prof = kappa(t)
    assert sorted(prof.exponents.values()) == [0, 1]
    octant = BoxAtom.orthant([0, 0, 0], {0: 1, 1: 1, 2: 1})
    b = component_basis(skeleton(octant, 2))
    comps = [[g for o in r for g in o.top_germs()] for r in b.regions]
    f = b.unit_power([2])
    prof = kappa(f, comps)
    assert prof.super_diagonal and prof.lambdas == {0: 2}
    # one face of the component moves further than the others
    o0 = b.regions[0][0]
    mixed = PiecewiseMap(b.domain, [(o, T(*diagonal_vector(o, 2 if o == o0 else 1))) for o in b.regions[0]])
    assert kappa(mixed, comps).super_diagonal is False


# properties -------------------------------------------------------------------

def _random_orthant_set(rng):
    n = rng.randint(1, 3)
    orths = gen.random_disjoint_orthants(rng, n, rng.randint(1, 3), max_rank=n)
    r = max(o.rank for o in orths)
    orths = [o for o in orths if o.rank == r] or orths
    return OrthohedralSet(n, orths, disjoint=True)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_group_axioms(seed):
    rng = random.Random(seed)
    s = _random_orthant_set(rng)
    f, g, h = (gen.random_pei_element(rng, s) for _ in range(3))
    ident = PiecewiseMap.identity(s)
    assert maps_equal(compose(compose(f, g), h), compose(f, compose(g, h)))
    assert maps_equal(compose(f, invert(f)), ident)
    assert maps_equal(compose(invert(f), f), ident)
    hw = max_coordinate(f, g) + 2
    assert check_bijection(compose(f, g), s, hw)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_height_is_a_homomorphism(seed):
    rng = random.Random(seed)
    s = _random_orthant_set(rng)
    f, g = gen.random_self_injection(rng, s), gen.random_self_injection(rng, s)
    assert injection_height(compose(f, g)) == injection_height(f) + injection_height(g)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_height_from_a_cofinite_part(seed):
    rng = random.Random(seed)
    s = _random_orthant_set(rng)
    n = s.rank
    f = gen.random_self_injection(rng, s)
    cut = OrthohedralSet(s.ambient, [a for a in (gen.random_atom(rng, s.ambient) for _ in range(3))
                                     if a.rank < n])
    a = s.difference(cut)
    fa = image_set(PiecewiseMap(a, [(c, iso) for p, iso in f.pieces for c in
                                    [p.intersect(x) for x in a.atoms] if c is not None]))
    lhs = germ_count_at_rank(a.difference(fa), n - 1) if n else 0
    rhs = germ_count_at_rank(s.difference(a).intersection(fa), n - 1) if n else 0
    assert injection_height(f) == lhs - rhs


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_germ_action_composes_and_height_is_conjugation_invariant(seed):
    rng = random.Random(seed)
    s = _random_orthant_set(rng)
    f, g = gen.random_pei_element(rng, s), gen.random_pei_element(rng, s)
    af, ag, afg = germ_action(f), germ_action(g), germ_action(compose(f, g))
    assert all(afg[x] == ag[af[x]] for x in afg)
    t = gen.random_self_injection(rng, s)
    assert injection_height(compose_all([invert(g), t, g])) == injection_height(t)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_pet_bijections_preserve_height_function(seed):
    rng = random.Random(seed)
    s = gen.OrthohedralSet(2, gen.stack([0, 0], {0: 1}, 1, rng.randint(1, 3)), disjoint=True)
    p = gen.random_pet_element(rng, s)
    act = germ_action(p)
    assert sorted(act.values()) == max_germs(s)
