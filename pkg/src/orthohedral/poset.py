"""Diagonal monoids of self-injections and their order by unit translations.

The domain is a disjoint union of rank-n orthants.  Orthants are grouped
into regions; the unit of a region translates each of its orthants L by the
diagonal vector u_L (the sum of its signed directions) and fixes everything
else.  f <= f' means f' = compose(t, f) for a product t of units, that is
f'(x) = f(t(x)).
"""

from collections import namedtuple
from dataclasses import dataclass

from .lattice import OrthohedralSet, orthant_boundary, regular_points, skeleton_structure
from .maps import (Isometry, MapError, PiecewiseMap, compose, glue, image_set,
                   injection_height, invert, is_injective, kappa, maps_equal,
                   restrict)
from .normal_forms import are_pei_isomorphic, are_pet_isomorphic, orthant_decomposition


def diagonal_vector(orthant, k=1):
    v = [0] * orthant.ambient
    for i, s in orthant.directions():
        v[i] = k * s
    return v


class UnitBasis:
    """Regions (groups of rank-n orthants) of a domain and their units.

    ``kind`` is "orthant" (one region per orthant) or "component" (one region
    per component of the regular points of a skeleton stack).  ``pet`` says
    whether the surrounding monoid only admits translations.
    """

    def __init__(self, domain, regions, kind, pet=False):
        self.domain = domain
        self.regions = [tuple(sorted(r)) for r in regions]
        self.kind = kind
        self.pet = pet
        atoms = [o for r in self.regions for o in r]
        n = domain.rank
        if any(o.rank != n or not o.is_orthant() for o in atoms):
            raise MapError("regions must consist of orthants of full rank")
        if domain != OrthohedralSet(domain.ambient, atoms, disjoint=True):
            raise MapError("regions do not partition the domain")
        self.n = n
        self._region_of = {o.top_germs()[0]: i for i, r in enumerate(self.regions) for o in r}

    def __len__(self):
        return len(self.regions)

    def region_set(self, i):
        return OrthohedralSet(self.domain.ambient, self.regions[i], disjoint=True)

    def unit_height(self, i):
        return self.n * len(self.regions[i])

    def height_of(self, exps):
        return sum(e * self.unit_height(i) for i, e in enumerate(exps))

    def unit_power(self, exps):
        exps = list(exps)
        if len(exps) != len(self.regions):
            raise MapError("exponent vector has the wrong length")
        pieces = []
        for e, r in zip(exps, self.regions):
            for o in r:
                pieces.append((o, Isometry.translation(diagonal_vector(o, e))))
        return PiecewiseMap(self.domain, pieces)

    def unit(self, i):
        exps = [0] * len(self.regions)
        exps[i] = 1
        return self.unit_power(exps)

    def boundary(self, i):
        out = OrthohedralSet.empty(self.domain.ambient)
        for o in self.regions[i]:
            out = out.union(orthant_boundary(o))
        return out

    def germ_exponents(self, f):
        """Diagonal exponent per orthant (germ), or None if f is not diagonal."""
        try:
            prof = kappa(f)
        except MapError:
            return None
        return prof.exponents

    def region_exponents(self, f):
        """Translation length per region, or None if not constant on some region."""
        exps = self.germ_exponents(f)
        if exps is None:
            return None
        out = []
        for r in self.regions:
            vals = {exps[o.top_germs()[0]] for o in r}
            if len(vals) != 1:
                return None
            out.append(vals.pop())
        return out

    def in_monoid(self, f):
        if not equal_domain(f, self.domain) or not is_injective(f):
            return False
        if not image_set(f).is_subset(self.domain):
            return False
        if self.pet and not all(iso.is_translation() for _, iso in f.pieces):
            return False
        return self.region_exponents(f) is not None


def equal_domain(f, s):
    return f.ambient == s.ambient and f.domain == s


def orthant_basis(s, pet=False):
    orths = orthant_decomposition(s)
    return UnitBasis(OrthohedralSet(s.ambient, orths, disjoint=True),
                     [(o,) for o in orths], "orthant", pet)


def component_basis(s):
    """Basis on the regular points of a skeleton stack, one region per
    component."""
    from .lattice import face_interiors
    st = skeleton_structure(s)
    regions = [face_interiors(b, st.directions, st.rank) for b in st.bases]
    return UnitBasis(regular_points(s).interior, regions, "component", pet=True)


ExponentVector = namedtuple("ExponentVector", "exponents")


def leq(basis, f, g):
    """Exponents t with g = compose(t, f), or None."""
    ef, eg = basis.region_exponents(f), basis.region_exponents(g)
    if ef is None or eg is None:
        return None
    d = [b - a for a, b in zip(ef, eg)]
    if any(x < 0 for x in d):
        return None
    if not maps_equal(compose(basis.unit_power(d), f), g):
        return None
    return ExponentVector(tuple(d))


@dataclass
class MaximalDecomposition:
    region: int
    boundary_part: PiecewiseMap
    residual_part: PiecewiseMap


def maximal_decompose(basis, b, f):
    """Split a maximal element b below f, or None if b is not maximal below f."""
    e = leq(basis, b, f)
    if e is None or sorted(e.exponents) != [0] * (len(basis) - 1) + [1]:
        return None
    i = e.exponents.index(1)
    edge = basis.boundary(i)
    return MaximalDecomposition(i, restrict(b, edge), restrict(b, basis.domain.difference(edge)))


def residual(basis, f, i):
    """(t_i^-1 then f) on the image of the unit t_i."""
    return compose(invert(basis.unit(i)), f)


def make_maximal(basis, f, i, cprime):
    """The maximal element below f given by a boundary injection c'."""
    edge = basis.boundary(i)
    if cprime.domain != edge:
        raise MapError("boundary map must be defined exactly on the region boundary")
    if not is_injective(cprime):
        raise MapError("boundary map is not injective")
    if basis.pet and not all(iso.is_translation() for _, iso in cprime.pieces):
        raise MapError("boundary map must be a pet-map")
    free = basis.domain.difference(image_set(f))
    if not image_set(cprime).is_subset(free):
        raise MapError("boundary image meets the image of f")
    c = glue([cprime, residual(basis, f, i)])
    if not is_injective(c):
        raise MapError("assembled map is not injective")
    return c


def _dedupe(maps):
    out = []
    for m in maps:
        if not any(maps_equal(m, o) for o in out):
            out.append(m)
    return out


Conditions = namedtuple("Conditions", "distinct_units disjoint_boundaries regions")


def lower_bound_conditions(basis, bs, f):
    regions = []
    for b in bs:
        d = maximal_decompose(basis, b, f)
        if d is None:
            raise MapError("element is not maximal below f")
        regions.append(d.region)
    distinct = len(set(regions)) == len(regions)
    images = [image_set(restrict(b, basis.boundary(r))) for b, r in zip(bs, regions)]
    disjoint = all(images[i].is_disjoint(images[j])
                   for i in range(len(bs)) for j in range(i + 1, len(bs)))
    return Conditions(distinct, disjoint, regions)


def common_lower_bound(basis, bs, f):
    """The largest common lower bound of maximal elements below f, or None
    when two of them share a unit or their boundary images meet."""
    bs = _dedupe(bs)
    cond = lower_bound_conditions(basis, bs, f)
    if not (cond.distinct_units and cond.disjoint_boundaries):
        return None
    parts, used = [], OrthohedralSet.empty(basis.domain.ambient)
    for b, i in zip(bs, cond.regions):
        edge = basis.boundary(i)
        region = basis.region_set(i)
        parts.append(restrict(b, edge))
        parts.append(restrict(residual(basis, f, i), region.difference(edge)))
        used = used.union(region)
    rest = basis.domain.difference(used)
    if not rest.is_empty():
        parts.append(restrict(f, rest))
    delta = glue(parts)
    if not is_injective(delta):
        raise MapError("lower bound is not injective")
    return delta


def is_largest_lower_bound(basis, delta, bs, f, candidates):
    """delta bounds every b from below and dominates every candidate that does."""
    if any(leq(basis, delta, b) is None for b in bs):
        raise MapError("delta is not a common lower bound")
    for g in candidates:
        if all(leq(basis, g, b) is not None for b in bs) and leq(basis, g, delta) is None:
            return False
    return True


def height_slice(r, s=None):
    """Membership predicate for r <= h(f) <= s (s None: unbounded)."""
    if s is not None and r > s:
        raise ValueError("empty slice: r > s")

    def member(f):
        h = injection_height(f)
        return h >= r and (s is None or h <= s)
    return member


def monomial_exponents(basis, f, limit=10_000):
    """(m, E) with compose(all units^m, f) equal to unit_power(E)."""
    e = basis.region_exponents(f)
    if e is None:
        raise MapError("not a diagonal map for this basis")
    k = len(basis)
    for m in range(limit):
        shifted = compose(basis.unit_power([m] * k), f)
        target = [m + x for x in e]
        if all(x >= 0 for x in target) and maps_equal(shifted, basis.unit_power(target)):
            return m, target
    raise MapError("no monomial found within the search limit")


def upper_bound(basis, f, g):
    """A common upper bound u and the exponents (t_f, t_g) with
    u = compose(unit_power(t_f), f) = compose(unit_power(t_g), g)."""
    ef, eg = basis.region_exponents(f), basis.region_exponents(g)
    _, pf = monomial_exponents(basis, f)
    _, pg = monomial_exponents(basis, g)
    top = [max(a, b) for a, b in zip(pf, pg)]
    u = basis.unit_power(top)
    tf = [t - x for t, x in zip(top, ef)]
    tg = [t - x for t, x in zip(top, eg)]
    return u, tf, tg


def orbit_connector(f, g, pet=True):
    """A permutation p of the domain with g = compose(f, p), built from an
    isomorphism between the complements of the two images; None if the
    complements are not isomorphic."""
    s = f.domain
    rest_f = s.difference(image_set(f))
    rest_g = s.difference(image_set(g))
    if rest_f.is_empty() and rest_g.is_empty():
        w = None
    else:
        w = (are_pet_isomorphic if pet else are_pei_isomorphic)(rest_f, rest_g)
        if w is None:
            return None
    parts = [compose(invert(f), g)]
    if w is not None:
        parts.append(w)
    return glue(parts)
