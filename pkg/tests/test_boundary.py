import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from orthohedral import generators as gen
from orthohedral.boundary import (boundary_direction, fl_report, link_height, link_upper_bound,
                                  projection_chain, sigma_lift, split, theta)
from orthohedral.lattice import BoxAtom, OrthohedralSet, parse_set, skeleton_stack
from orthohedral.maps import MapError, PiecewiseMap, compose, maps_equal, validate
from orthohedral.normal_forms import pet_normal_form


def S(text, n=None):
    return parse_set(text, n)


def x_rays(h):
    return OrthohedralSet(2, gen.stack([0, 0], {0: 1}, 1, h), disjoint=True)


def skeleton_stack_set(r=3, n=2, copies=2):
    comps = [BoxAtom.orthant([0] * r + [3 * c], {i: 1 for i in range(r)}) for c in range(copies)]
    return skeleton_stack(comps, n)


def test_boundary_examples():
    assert boundary_direction(x_rays(3), 0) == S("{[0],[1],[2]}")
    assert boundary_direction(S("{[0+,0+]}"), 0) == S("{[0+]}")
    assert boundary_direction(S("{[0,0+],[4,2+]}"), 0).is_empty()
    with pytest.raises(ValueError):
        boundary_direction(S("{[(-1)+,0]}"), 0)


def test_split_examples():
    s = S("{[0+,0],[0,1+]}")
    along, perp = split(s, 0)
    assert along == S("{[0+,0]}") and perp == S("{[0,1+]}")
    along, perp = split(S("{[0+,0+]}"), 1)
    assert along == S("{[0+,0+]}") and perp.is_empty()
    with pytest.raises(ValueError):
        split(S("{[0+,0+],[0+,(-5)]}"), 0)


def test_theta_examples():
    s = x_rays(3)
    ident = PiecewiseMap.identity(s)
    assert maps_equal(theta(ident, 0), PiecewiseMap.identity(boundary_direction(s, 0)))
    swap = gen.orthant_swap(s, BoxAtom.orthant([0, 0], {0: 1}), BoxAtom.orthant([0, 2], {0: 1}))
    t = theta(swap, 0)
    table = O.map_table(t, 4)
    assert table[(0,)] == (2,) and table[(2,)] == (0,) and table[(1,)] == (1,)
    neg = PiecewiseMap(S("{[0+]}"), [(BoxAtom([(0, None)]), gen.Isometry([(0, -1)], [0]))], merge=False)
    with pytest.raises(MapError):
        theta(neg, 0)


def test_sigma_is_a_section_example():
    s = x_rays(3)
    bd = boundary_direction(s, 0)
    k = gen.point_transposition(bd, (0,), (2,))
    lift = sigma_lift(k, 0, s)
    assert validate(lift).pet and validate(lift).bijective
    assert maps_equal(theta(lift, 0), k)


def test_link_height_example():
    s = skeleton_stack_set()
    assert link_height(s, {0}) == 4
    assert link_height(s, {3}) == 0
    with pytest.raises(ValueError):
        link_height(s, {0, 1})
    assert link_upper_bound(s)[0] == 3


def test_projection_chain():
    s = S("{[0+,0+,0+]}")
    assert projection_chain(s, [0, 2]) == S("{[0+]}")


def test_fl_report_examples():
    assert fl_report(x_rays(4), "pet").as_dict()["lower"] == 3
    assert fl_report(x_rays(4), "pet").as_dict()["upper"] == 3
    z2 = S("{[free,free]}")
    rep = fl_report(z2, "pei")
    assert rep.lower == 3 and rep.upper is None
    rep = fl_report(skeleton_stack_set(), "pet")
    assert (rep.lower, rep.upper) == (1, 3)
    assert fl_report(S("{[0,0],[3,1]}"), "pet").lower is None
    with pytest.raises(ValueError):
        fl_report(z2, "pxx")
    d = fl_report(x_rays(2), "pet").as_dict()
    assert set(d) == {"flavor", "lower", "upper", "provenance"} and d["provenance"]


# properties -------------------------------------------------------------------

def _standard_set(rng):
    n = rng.randint(2, 3)
    atoms = []
    for _ in range(rng.randint(1, 3)):
        bounds = []
        for _ in range(n):
            a = rng.randint(0, 4)
            bounds.append(rng.choice([(a, a), (a, None)]))
        atoms.append(BoxAtom(bounds))
    return OrthohedralSet(n, atoms)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_boundary_drops_rank_by_one(seed):
    rng = random.Random(seed)
    s = pet_normal_form(_standard_set(rng)).normalized
    x = rng.randrange(s.ambient)
    along, _ = split(s, x)
    if along.is_empty():
        assert boundary_direction(s, x).is_empty()
        return
    assert boundary_direction(s, x).rank == along.rank - 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_theta_is_a_homomorphism(seed, h):
    rng = random.Random(seed)
    s = x_rays(h) if h > 1 else OrthohedralSet(3, gen.stack([0, 0, 0], {0: 1, 1: 1}, 2, 2), disjoint=True)
    f, g = gen.random_pet_element(rng, s), gen.random_pet_element(rng, s)
    assert maps_equal(theta(compose(f, g), 0), compose(theta(f, 0), theta(g, 0)))
    bd = boundary_direction(s, 0)
    k = gen.random_pet_element(rng, bd)
    assert maps_equal(theta(sigma_lift(k, 0, s), 0), k)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6))
def test_stack_bounds_coincide(h):
    rep = fl_report(x_rays(h), "pet")
    assert rep.lower == rep.upper == h - 1


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5))
def test_adding_a_parallel_orthant_raises_the_bound(h):
    a, b = fl_report(x_rays(h), "pet"), fl_report(x_rays(h + 1), "pet")
    assert b.lower == a.lower + 1 and b.upper == a.upper + 1
