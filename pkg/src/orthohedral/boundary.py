"""Boundaries at infinity, the induced retractions, and the bounds report."""

from dataclasses import dataclass, field
from itertools import combinations

from .lattice import BoxAtom, OrthohedralSet, max_germs, skeleton_structure
from .maps import Isometry, MapError, PiecewiseMap, extend_by_identity
from .normal_forms import is_pet_normal, is_stack, orthant_decomposition, pet_normal_form


def in_standard_orthant(s):
    return all(lo is not None and lo >= 0 for a in s.atoms for lo, _ in a.bounds)


def _drop(seq, x):
    return tuple(seq[:x]) + tuple(seq[x + 1:])


def _insert(seq, x, item):
    return tuple(seq[:x]) + (item,) + tuple(seq[x:])


def boundary_direction(s, x):
    """Base points (x-coordinate deleted) of the rank-1 germs parallel to +e_x."""
    if not in_standard_orthant(s):
        raise ValueError("set is not inside the standard orthant")
    if not 0 <= x < s.ambient:
        raise ValueError(f"axis {x} out of range")
    atoms = [BoxAtom(_drop(a.bounds, x)) for a in s.atoms if a.bounds[x][1] is None]
    return OrthohedralSet(s.ambient - 1, atoms)


def split(s, x):
    """(S(x), S-perp(x)) for a set in pet-normal form."""
    if not is_pet_normal(s):
        raise ValueError("set is not in pet-normal form")
    along, perp = [], []
    for o in orthant_decomposition(s):
        (along if (x, 1) in o.directions() else perp).append(o)
    n = s.ambient
    return OrthohedralSet(n, along), OrthohedralSet(n, perp)


def theta(g, x):
    """Induced pet-permutation of the boundary in direction x."""
    if not all(iso.is_translation() for _, iso in g.pieces):
        raise MapError("map is not a pet-map")
    pieces = []
    for a, iso in g.pieces:
        if a.bounds[x][1] is None:
            pieces.append((BoxAtom(_drop(a.bounds, x)), Isometry.translation(_drop(iso.shift, x))))
    return PiecewiseMap(boundary_direction(g.domain, x), pieces)


def sigma_lift(k, x, s):
    """Lift a pet-permutation of the x-boundary of s to s.

    Each orthant O of S(x) sits over its projection; points move within the
    x-ray fibres, keeping the distance to the base of the orthant.  The lift
    is the identity on S-perp(x)."""
    along, perp = split(s, x)
    orths = orthant_decomposition(along)
    shadows = [(BoxAtom(_drop(o.bounds, x)), o.bounds[x][0]) for o in orths]
    pieces = []
    for b, iso in k.pieces:
        for pa, base_a in shadows:
            part = b.intersect(pa)
            if part is None:
                continue
            for pb, base_b in shadows:
                pre = iso.preimage_atom(pb)
                cell = part.intersect(pre)
                if cell is None:
                    continue
                atom = BoxAtom(_insert(cell.bounds, x, (base_a, None)))
                shift = _insert(iso.shift, x, base_b - base_a)
                pieces.append((atom, Isometry.translation(shift)))
    lift = PiecewiseMap(along, pieces)
    return extend_by_identity(lift, s) if not perp.is_empty() else lift


def rank_germ_heights(s, n):
    """Number of rank-n germs per axis set."""
    out = {}
    for g in max_germs(s):
        if g.rank == n:
            out[g.axes()] = out.get(g.axes(), 0) + 1
    return out


def link_height(s, axes):
    """h(S(Lk(Y))): rank-n stack heights summed over n-sets containing Y."""
    n = s.rank
    axes = frozenset(axes)
    if len(axes) != n - 1:
        raise ValueError(f"need {n - 1} axes, got {len(axes)}")
    heights = rank_germ_heights(s, n)
    return sum(h for ys, h in heights.items() if axes <= ys)


def projection_chain(s, axes):
    """Repeated boundaries along the given axes (largest index first so that
    the remaining indices stay valid)."""
    out = s
    for x in sorted(axes, reverse=True):
        out = boundary_direction(out, x)
    return out


@dataclass
class BoundsReport:
    flavor: str
    lower: int = None
    upper: int = None
    provenance: list = field(default_factory=list)

    def as_dict(self):
        return {"flavor": self.flavor, "lower": self.lower, "upper": self.upper,
                "provenance": list(self.provenance)}


def _skeleton(s):
    try:
        return skeleton_structure(s)
    except ValueError:
        return None


def link_upper_bound(s):
    n = s.rank
    best = None
    for ys in combinations(range(s.ambient), n - 1):
        h = link_height(s, ys)
        if h > 0 and (best is None or h - 1 < best[0]):
            best = (h - 1, ys)
    return best


def fl_report(s, flavor):
    if flavor not in ("pei", "pet"):
        raise ValueError("flavor must be 'pei' or 'pet'")
    rep = BoundsReport(flavor)
    if s.is_empty() or s.rank == 0:
        rep.provenance.append("finite set: the group is finite, no bound from the theorems")
        return rep
    h = s.height
    if flavor == "pei":
        rep.lower = h - 1
        rep.provenance.append("pei lower bound: fl >= h(S) - 1")
        return rep
    nf = pet_normal_form(s).normalized
    if is_stack(nf):
        c = len(orthant_decomposition(nf))
        rep.lower = rep.upper = c - 1
        rep.provenance.append("stack of orthants (after pet-normalisation): fl = h(S) - 1")
        return rep
    sk = _skeleton(s) or _skeleton(nf)
    if sk is not None:
        rep.lower = len(sk.bases) - 1
        rep.provenance.append("skeleton stack lower bound: fl >= c(S) - 1")
    if in_standard_orthant(s):
        best = link_upper_bound(nf)
        if best is not None:
            rep.upper = best[0]
            rep.provenance.append(f"link bound on axes {list(best[1])}: fl <= h(S(Lk(Y))) - 1 = {best[0]}")
            if sk is not None:
                rep.provenance.append("skeleton stack: c(S) - 1 <= fl <= c(S)(r - n + 1) - 1")
    else:
        rep.provenance.append("set not inside the standard orthant: no link bound")
    return rep
