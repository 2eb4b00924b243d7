"""Seeded window-oracle checks, runnable from the command line."""

import numpy as np

from . import generators as gen
from . import trees as tr
from .maps import compose, injection_height
from .normal_forms import pei_normal_form, pet_normal_form
from .window import check_bijection, grid_points, max_coordinate, set_mask


def _set_algebra(rng, count):
    ok = 0
    for _ in range(count):
        n = rng.randint(1, 3)
        a, b = gen.random_set(rng, n), gen.random_set(rng, n)
        pts = grid_points(n, 8)
        ma, mb = set_mask(a, pts), set_mask(b, pts)
        good = (np.array_equal(set_mask(a.union(b), pts), ma | mb)
                and np.array_equal(set_mask(a.intersection(b), pts), ma & mb)
                and np.array_equal(set_mask(a.complement(), pts), ~ma))
        ok += good
    return ok


def _normal_forms(rng, count):
    ok = 0
    for _ in range(count):
        n = rng.randint(1, 2)
        s = gen.random_set(rng, n, max_atoms=2)
        good = True
        for res in (pet_normal_form(s), pei_normal_form(s)):
            w = res.witness
            hw = max_coordinate(s, res.normalized, w) + 2
            good &= check_bijection(w, res.normalized, hw)
        ok += good
    return ok


def _heights(rng, count):
    ok = 0
    for _ in range(count):
        s = gen.stack([0, 0], {0: 1}, 1, rng.randint(1, 3))
        s = gen.OrthohedralSet(2, s, disjoint=True)
        f, g = gen.random_self_injection(rng, s), gen.random_self_injection(rng, s)
        ok += injection_height(compose(f, g)) == injection_height(f) + injection_height(g)
    return ok


def _trees(rng, count):
    ok = 0
    for _ in range(count):
        e = tr.random_element(rng, 1, 3)
        f = tr.random_element(rng, 1, 3)
        good = tr.elements_equal(tr.to_v(tr.compose(e, f)), tr.compose(tr.to_v(e), tr.to_v(f)))
        good &= tr.is_identity(tr.compose(e, tr.invert(e)))
        ok += good
    return ok


def run_selftest(seed=0, count=50):
    rng = gen.rng_from(seed)
    out = {"seed": seed, "count": count, "suites": {}}
    for name, fn in (("set_algebra", _set_algebra), ("normal_forms", _normal_forms),
                     ("height_additivity", _heights), ("tree_pairs", _trees)):
        passed = int(fn(rng, count))
        out["suites"][name] = {"passed": passed, "total": count}
    out["ok"] = all(v["passed"] == v["total"] for v in out["suites"].values())
    return out
