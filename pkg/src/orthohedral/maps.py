"""Piecewise isometric maps between orthohedral sets.

Composition follows the order of application: ``compose(f, g)`` applies f
first and g second, so ``h(compose(f, g)) == h(f) + h(g)`` for self-injections.
"""

from collections import namedtuple
from dataclasses import dataclass, field
from itertools import combinations

from .lattice import (BoxAtom, Germ, OrthohedralSet, _adjacent, _check_dim,
                      equal_sets, germ_count_at_rank, max_germs)


class MapError(ValueError):
    pass


class Isometry:
    """x -> shift + A x with A a signed permutation.

    ``perm[i] = (j, s)`` means output coordinate i is ``shift[i] + s * x[j]``.
    """

    __slots__ = ("perm", "shift")

    def __init__(self, perm, shift):
        self.perm = tuple((int(j), 1 if s > 0 else -1) for j, s in perm)
        self.shift = tuple(int(c) for c in shift)
        if sorted(j for j, _ in self.perm) != list(range(len(self.perm))):
            raise MapError(f"not a signed permutation: {perm}")
        if len(self.shift) != len(self.perm):
            raise MapError("shift length differs from dimension")

    @classmethod
    def identity(cls, n):
        return cls([(i, 1) for i in range(n)], [0] * n)

    @classmethod
    def translation(cls, v):
        return cls([(i, 1) for i in range(len(v))], v)

    @property
    def ambient(self):
        return len(self.perm)

    def is_translation(self):
        return all(j == i and s > 0 for i, (j, s) in enumerate(self.perm))

    def is_identity(self):
        return self.is_translation() and not any(self.shift)

    def __call__(self, x):
        return tuple(c + s * x[j] for (j, s), c in zip(self.perm, self.shift))

    def then(self, other):
        """Apply self, then other."""
        perm, shift = [], []
        for (j, s), c in zip(other.perm, other.shift):
            k, t = self.perm[j]
            perm.append((k, s * t))
            shift.append(c + s * self.shift[j])
        return Isometry(perm, shift)

    def inverse(self):
        perm = [None] * self.ambient
        shift = [0] * self.ambient
        for i, ((j, s), c) in enumerate(zip(self.perm, self.shift)):
            perm[j] = (i, s)
            shift[j] = -s * c
        return Isometry(perm, shift)

    def image_atom(self, atom):
        out = []
        for (j, s), c in zip(self.perm, self.shift):
            lo, hi = atom.bounds[j]
            if s > 0:
                out.append((None if lo is None else lo + c, None if hi is None else hi + c))
            else:
                out.append((None if hi is None else c - hi, None if lo is None else c - lo))
        return BoxAtom(out)

    def preimage_atom(self, atom):
        out = [None] * self.ambient
        for i, ((j, s), c) in enumerate(zip(self.perm, self.shift)):
            lo, hi = atom.bounds[i]
            if s > 0:
                out[j] = (None if lo is None else lo - c, None if hi is None else hi - c)
            else:
                out[j] = (None if hi is None else c - hi, None if lo is None else c - lo)
        return BoxAtom(out)

    def image_germ(self, g):
        a = self.image_atom(g.representative())
        dirs, off = [], []
        for i, (lo, hi) in enumerate(a.bounds):
            if lo is None:
                dirs.append((i, -1))
            elif hi is None:
                dirs.append((i, 1))
            else:
                off.append((i, lo))
        return Germ(dirs, off)

    def agrees_on(self, other, atom):
        """Do the two affine maps coincide on the affine hull of atom?"""
        p = list(atom.base_point())
        if self(p) != other(p):
            return False
        for i, (lo, hi) in enumerate(atom.bounds):
            if lo != hi or lo is None:
                q = p[:]
                q[i] += 1
                if self(q) != other(q):
                    return False
        return True

    def perm_code(self):
        """Signed 1-based permutation vector as used in the JSON encoding."""
        return [s * (j + 1) for j, s in self.perm]

    def __eq__(self, other):
        return isinstance(other, Isometry) and self.perm == other.perm and self.shift == other.shift

    def __hash__(self):
        return hash((self.perm, self.shift))

    def __repr__(self):
        return f"Isometry({self.perm_code()}, {list(self.shift)})"


def _merge_pieces(pieces):
    pieces = list(pieces)
    changed = True
    while changed:
        changed = False
        for i, j in combinations(range(len(pieces)), 2):
            (a, f), (b, g) = pieces[i], pieces[j]
            if f != g:
                continue
            diff = [k for k in range(a.ambient) if a.bounds[k] != b.bounds[k]]
            if len(diff) != 1:
                continue
            k = diff[0]
            joined = _adjacent(a.bounds[k], b.bounds[k])
            if joined is None:
                continue
            pieces[i] = (BoxAtom(a.bounds[:k] + (joined,) + a.bounds[k + 1:]), f)
            del pieces[j]
            changed = True
            break
    return sorted(pieces, key=lambda p: p[0].sort_key())


class PiecewiseMap:
    """A domain set with a partition into atoms, each carrying an isometry."""

    __slots__ = ("domain", "pieces")

    def __init__(self, domain, pieces, merge=True):
        pieces = [(a, f) for a, f in pieces]
        for a, f in pieces:
            _check_dim(domain.ambient, a.ambient)
            _check_dim(domain.ambient, f.ambient)
        self.domain = domain
        self.pieces = tuple(_merge_pieces(pieces) if merge else pieces)

    @classmethod
    def identity(cls, s):
        iso = Isometry.identity(s.ambient)
        return cls(s, [(a, iso) for a in s.atoms])

    @classmethod
    def from_isometry(cls, s, iso):
        return cls(s, [(a, iso) for a in s.atoms])

    @property
    def ambient(self):
        return self.domain.ambient

    def __call__(self, x):
        return apply(self, x)

    def __repr__(self):
        body = ", ".join(f"{a}->{f}" for a, f in self.pieces)
        return f"PiecewiseMap({body})"


def apply(f, x):
    for a, iso in f.pieces:
        if a.contains(x):
            return iso(x)
    raise MapError(f"point {tuple(x)} outside the domain")


def image_set(f):
    return OrthohedralSet(f.ambient, [iso.image_atom(a) for a, iso in f.pieces], disjoint=True)


def partition_ok(f):
    atoms = [a for a, _ in f.pieces]
    if any(a.intersect(b) is not None for a, b in combinations(atoms, 2)):
        return False
    return equal_sets(OrthohedralSet(f.ambient, atoms, disjoint=True), f.domain)


def is_injective(f):
    imgs = [iso.image_atom(a) for a, iso in f.pieces]
    return all(a.intersect(b) is None for a, b in combinations(imgs, 2))


Flags = namedtuple("Flags", "injective bijective pet diagonal super_diagonal")


def validate(f, components=None):
    """Check the piece partition and classify the map.

    ``bijective`` means the image equals the domain.  ``diagonal`` and
    ``super_diagonal`` are reported for self-injections; ``super_diagonal``
    needs ``components`` (lists of maximal orthants grouped per component)
    and is None otherwise.
    """
    atoms = [a for a, _ in f.pieces]
    for a, b in combinations(atoms, 2):
        if a.intersect(b) is not None:
            raise MapError(f"overlapping pieces {a} and {b}")
    if not equal_sets(OrthohedralSet(f.ambient, atoms, disjoint=True), f.domain):
        raise MapError("pieces do not cover the domain exactly")
    inj = is_injective(f)
    img = image_set(f)
    bij = inj and equal_sets(img, f.domain)
    pet = all(iso.is_translation() for _, iso in f.pieces)
    diag = sdiag = None
    if inj and img.is_subset(f.domain):
        try:
            prof = kappa(f, components)
        except MapError:
            diag = False
            sdiag = False if components is not None else None
        else:
            diag = prof.exponents is not None
            sdiag = prof.super_diagonal
    else:
        diag = False
        sdiag = False if components is not None else None
    return Flags(inj, bij, pet, diag, sdiag)


def _need_subset(f, target):
    if not image_set(f).is_subset(target):
        raise MapError("image of the first map is not inside the second map's domain")


def compose(f, g):
    """The map x -> g(f(x)); requires image(f) inside domain(g)."""
    _check_dim(f.ambient, g.ambient)
    _need_subset(f, g.domain)
    pieces = []
    for a, s in f.pieces:
        for b, t in g.pieces:
            c = a.intersect(s.preimage_atom(b))
            if c is not None:
                pieces.append((c, s.then(t)))
    return PiecewiseMap(f.domain, pieces)


def compose_all(maps):
    out = maps[0]
    for m in maps[1:]:
        out = compose(out, m)
    return out


def invert(f):
    """Inverse of an injective map, defined on its image."""
    if not is_injective(f):
        raise MapError("cannot invert a map that is not injective")
    pieces = [(iso.image_atom(a), iso.inverse()) for a, iso in f.pieces]
    return PiecewiseMap(image_set(f), pieces)


def restrict(f, subset):
    """Restriction of f to a subset of its domain."""
    if not subset.is_subset(f.domain):
        raise MapError("restriction target is not inside the domain")
    pieces = []
    for a, iso in f.pieces:
        for b in subset.atoms:
            c = a.intersect(b)
            if c is not None:
                pieces.append((c, iso))
    return PiecewiseMap(subset, pieces)


def glue(maps):
    """Union of maps with pairwise disjoint domains."""
    n = maps[0].ambient
    dom = OrthohedralSet(n, [a for m in maps for a in m.domain.atoms])
    pieces = [p for m in maps for p in m.pieces]
    atoms = [a for a, _ in pieces]
    if any(a.intersect(b) is not None for a, b in combinations(atoms, 2)):
        raise MapError("glued domains overlap")
    return PiecewiseMap(dom, pieces)


def extend_by_identity(f, s):
    """f on its domain, identity on the rest of s."""
    rest = s.difference(f.domain)
    pieces = list(f.pieces) + [(a, Isometry.identity(s.ambient)) for a in rest.atoms]
    return PiecewiseMap(s, pieces)


def maps_equal(f, g):
    if f.ambient != g.ambient or not equal_sets(f.domain, g.domain):
        return False
    for a, s in f.pieces:
        for b, t in g.pieces:
            c = a.intersect(b)
            if c is not None and s != t and not s.agrees_on(t, c):
                return False
    return True


def self_injection_complement(f):
    """S - f(S) for a self-injection f of S."""
    if not is_injective(f):
        raise MapError("map is not injective")
    img = image_set(f)
    if not img.is_subset(f.domain):
        raise MapError("map does not send its domain into itself")
    return f.domain.difference(img)


def injection_height(f):
    """Number of rank-(n-1) germs of S - f(S), n = rank S."""
    s = f.domain
    if s.is_empty():
        return 0
    rest = self_injection_complement(f)
    n = s.rank
    if not rest.is_empty() and rest.rank >= n:
        raise MapError("rank condition violated: complement has full rank")
    return germ_count_at_rank(rest, n - 1) if n > 0 else 0


def parallel_height(f, axes):
    """Rank-(n-1) germs of S - f(S) parallel to the span of ``axes``."""
    axes = frozenset(axes)
    n = f.domain.rank
    if len(axes) != n - 1:
        raise MapError(f"need {n - 1} axes, got {len(axes)}")
    rest = self_injection_complement(f)
    if not rest.is_empty() and rest.rank >= n:
        raise MapError("rank condition violated: complement has full rank")
    count = 0
    for a in rest.atoms:
        if a.rank == n - 1:
            count += sum(1 for g in a.top_germs() if g.axes() == axes)
    return count


def piece_of_germ(f, g):
    for a, iso in f.pieces:
        if a.contains_germ(g):
            return a, iso
    raise MapError(f"{g} is not a germ of the domain")


def germ_action(f):
    """Image of every maximal germ of the domain."""
    out = {}
    for g in max_germs(f.domain):
        _, iso = piece_of_germ(f, g)
        out[g] = iso.image_germ(g)
    return out


def orthant_pieces(f):
    return [(o, iso) for a, iso in f.pieces for o in a.orthants()]


def acts_trivially(atom, iso):
    return iso.agrees_on(Isometry.identity(atom.ambient), atom)


def has_finite_support(g):
    """Only finitely many points move: identity on every positive-rank
    orthant piece."""
    return all(o.rank == 0 or acts_trivially(o, iso) for o, iso in orthant_pieces(g))


def local_action(iso, g):
    """Induced isometry of the tangent coset of a fixed germ, in coordinates
    along the germ's direction axes (in increasing axis order)."""
    axes = [i for i, _ in g.dirs]
    pos = {a: k for k, a in enumerate(axes)}
    perm, shift = [], []
    p = g.representative().base_point()
    q = iso(p)
    for i in axes:
        j, s = iso.perm[i]
        perm.append(s * (pos[j] + 1))
        shift.append(q[i] - s * p[j])
    return tuple(perm), tuple(shift)


SeriesLevel = namedtuple("SeriesLevel", "in_c in_k fixed_germ_actions")


def series_membership(g, j):
    """Membership of g in the germwise stabiliser C(j) and in the kernel K(j)."""
    n = g.domain.rank
    if not 1 <= j <= max(n, 1):
        raise MapError(f"level {j} out of range 1..{n}")
    pieces = orthant_pieces(g)

    def in_k(level):
        return all(o.rank < level or acts_trivially(o, iso) for o, iso in pieces)

    k_here = in_k(j)
    c_here = in_k(j + 1)
    actions = {}
    if c_here:
        for o, iso in pieces:
            if o.rank != j or acts_trivially(o, iso):
                continue
            germ = o.top_germs()[0]
            if iso.image_germ(germ) != germ:
                c_here = False
                break
            actions[germ] = local_action(iso, germ)
    return SeriesLevel(c_here, k_here, actions)


@dataclass
class TranslationProfile:
    isometries: dict
    exponents: dict = None
    lambdas: dict = None
    super_diagonal: bool = None
    notes: list = field(default_factory=list)


def diagonal_exponent(perm, shift, g):
    """k with local shift = k * (sum of direction vectors), else None."""
    if any(p != k + 1 for k, p in enumerate(perm)):
        return None
    signs = [s for _, s in g.dirs]
    if not signs:
        return 0
    k = shift[0] * signs[0]
    if all(c == k * s for c, s in zip(shift, signs)):
        return k
    return None


def kappa(f, components=None):
    """Induced isometries on the tangent cosets of the maximal germs.

    ``components`` is an optional list of germ groups; when given, the
    super-diagonal test compares translation lengths within each group.
    """
    isos = {}
    for g in max_germs(f.domain):
        _, iso = piece_of_germ(f, g)
        if iso.image_germ(g) != g:
            raise MapError(f"map moves the maximal germ {g}")
        isos[g] = local_action(iso, g)
    exps = {}
    for g, (perm, shift) in isos.items():
        k = diagonal_exponent(perm, shift, g)
        if k is None:
            exps = None
            break
        exps[g] = k
    prof = TranslationProfile(isos, exps)
    if components is not None:
        if exps is None:
            prof.super_diagonal = False
        else:
            lam = {}
            ok = True
            for c, germs in enumerate(components):
                vals = {exps[g] for g in germs}
                if len(vals) != 1:
                    ok = False
                else:
                    lam[c] = vals.pop()
            prof.super_diagonal = ok
            prof.lambdas = lam if ok else None
    return prof
