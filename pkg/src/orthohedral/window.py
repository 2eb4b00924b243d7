"""Finite-window enumeration of orthohedral sets and piecewise maps.

Agreement of two sets on a box window that exceeds every threshold of the
inputs by two in each direction implies agreement everywhere.
"""

import numpy as np

from .lattice import OrthohedralSet


def grid_points(ambient, half_width):
    axis = np.arange(-half_width, half_width + 1)
    mesh = np.meshgrid(*([axis] * ambient), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def atom_mask(atom, pts):
    mask = np.ones(len(pts), dtype=bool)
    for i, (lo, hi) in enumerate(atom.bounds):
        if lo is not None:
            mask &= pts[:, i] >= lo
        if hi is not None:
            mask &= pts[:, i] <= hi
    return mask


def set_mask(s, pts):
    mask = np.zeros(len(pts), dtype=bool)
    for a in s.atoms:
        mask |= atom_mask(a, pts)
    return mask


def cover_count(s, pts):
    """How many atoms contain each point (1 everywhere on s when disjoint)."""
    count = np.zeros(len(pts), dtype=int)
    for a in s.atoms:
        count += atom_mask(a, pts)
    return count


def apply_points(f, pts):
    """Images of points under f; rows outside the domain are left as-is and
    flagged False in the returned mask."""
    out = pts.copy()
    hit = np.zeros(len(pts), dtype=bool)
    for a, iso in f.pieces:
        m = atom_mask(a, pts)
        if not m.any():
            continue
        sub = pts[m]
        img = np.empty_like(sub)
        for i, ((j, s), c) in enumerate(zip(iso.perm, iso.shift)):
            img[:, i] = c + s * sub[:, j]
        out[m] = img
        hit |= m
    return out, hit


def max_coordinate(*objs):
    m = 0
    for obj in objs:
        atoms = obj.atoms if isinstance(obj, OrthohedralSet) else [a for a, _ in obj.pieces]
        for a in atoms:
            for lo, hi in a.bounds:
                for v in (lo, hi):
                    if v is not None:
                        m = max(m, abs(v))
    return m


def check_bijection(f, target, half_width):
    """Window test that f maps its domain bijectively onto target.

    Every window point of the domain must land in target with distinct
    images, and every window point of target must be hit.  Preimages are
    proposed by the inverse map and then confirmed by applying f, so the
    test does not trust the inverse.
    """
    from .maps import invert

    pts = grid_points(f.ambient, half_width)
    dom = set_mask(f.domain, pts)
    img, hit = apply_points(f, pts[dom])
    if not hit.all() or not set_mask(target, img).all():
        return False
    if len(np.unique(img, axis=0)) != len(img):
        return False
    tpts = pts[set_mask(target, pts)]
    pre, ok = apply_points(invert(f), tpts)
    if not ok.all() or not set_mask(f.domain, pre).all():
        return False
    back, ok = apply_points(f, pre)
    return bool(ok.all() and (back == tpts).all())
