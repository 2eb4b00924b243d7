"""Orthants, box atoms and orthohedral subsets of the integer lattice.

An axis constraint is stored as a closed interval ``(lo, hi)`` where either
end may be ``None`` for "unbounded".  The five constraint kinds are read off
the interval:

    (a, a)        fixed coordinate
    (a, None)     ray pointing up from a
    (None, a)     ray pointing down from a
    (a, b), a<b   finite range
    (None, None)  free axis

Every set operation is exact.  Atoms of a set are kept pairwise disjoint.
"""

from collections import namedtuple
from itertools import combinations, product
from math import comb
import re

FIX, RANGE, UP, DOWN, FREE = "fix", "range", "up", "down", "free"
_KIND_ORDER = {FIX: 0, RANGE: 1, UP: 2, DOWN: 3, FREE: 4}


class DimensionError(ValueError):
    pass


def interval_kind(iv):
    lo, hi = iv
    if lo is None:
        return FREE if hi is None else DOWN
    if hi is None:
        return UP
    return FIX if lo == hi else RANGE


def meet(a, b):
    """Intersection of two intervals, or None when empty."""
    lo = a[0] if b[0] is None else b[0] if a[0] is None else max(a[0], b[0])
    hi = a[1] if b[1] is None else b[1] if a[1] is None else min(a[1], b[1])
    if lo is not None and hi is not None and lo > hi:
        return None
    return (lo, hi)


def _in_interval(v, iv):
    return (iv[0] is None or iv[0] <= v) and (iv[1] is None or v <= iv[1])


def _adjacent(a, b):
    """Union of two touching intervals, or None."""
    if a[1] is not None and b[0] is not None and a[1] + 1 == b[0]:
        return (a[0], b[1])
    if b[1] is not None and a[0] is not None and b[1] + 1 == a[0]:
        return (b[0], a[1])
    return None


class BoxAtom:
    """A product of per-axis interval constraints; never empty."""

    __slots__ = ("bounds", "_key")

    def __init__(self, bounds):
        bounds = tuple((None if lo is None else int(lo), None if hi is None else int(hi))
                       for lo, hi in bounds)
        for lo, hi in bounds:
            if lo is not None and hi is not None and lo > hi:
                raise ValueError(f"empty interval ({lo}, {hi})")
        self.bounds = bounds
        self._key = None

    @classmethod
    def orthant(cls, base, directions):
        """Orthant at ``base`` spanned by signed directions {axis: +1 | -1}."""
        bounds = []
        for i, a in enumerate(base):
            s = directions.get(i)
            bounds.append((a, a) if s is None else (a, None) if s > 0 else (None, a))
        return cls(bounds)

    @classmethod
    def point(cls, p):
        return cls([(a, a) for a in p])

    @property
    def ambient(self):
        return len(self.bounds)

    def kinds(self):
        return [interval_kind(iv) for iv in self.bounds]

    @property
    def rank(self):
        return sum(1 for lo, hi in self.bounds if lo is None or hi is None)

    def is_orthant(self):
        return all(k in (FIX, UP, DOWN) for k in self.kinds())

    def directions(self):
        """Signed directions of an orthant atom, as a sorted tuple of (axis, sign)."""
        out = []
        for i, k in enumerate(self.kinds()):
            if k == UP:
                out.append((i, 1))
            elif k == DOWN:
                out.append((i, -1))
            elif k == FREE:
                raise ValueError("free axis has no single direction")
        return tuple(out)

    def unbounded_axes(self):
        return [i for i, (lo, hi) in enumerate(self.bounds) if lo is None or hi is None]

    def base_point(self):
        return tuple(lo if lo is not None else hi if hi is not None else 0
                     for lo, hi in self.bounds)

    def contains(self, p):
        return all(_in_interval(v, iv) for v, iv in zip(p, self.bounds))

    def intersect(self, other):
        _check_dim(self.ambient, other.ambient)
        out = []
        for a, b in zip(self.bounds, other.bounds):
            m = meet(a, b)
            if m is None:
                return None
            out.append(m)
        return BoxAtom(out)

    def subtract(self, other):
        """self minus other as a list of disjoint atoms (axis sweep)."""
        if self.intersect(other) is None:
            return [self]
        pieces = []
        cur = list(self.bounds)
        for i, (lo, hi) in enumerate(cur):
            olo, ohi = other.bounds[i]
            if olo is not None and (lo is None or lo < olo):
                pieces.append(BoxAtom(cur[:i] + [(lo, olo - 1)] + cur[i + 1:]))
            if ohi is not None and (hi is None or hi > ohi):
                pieces.append(BoxAtom(cur[:i] + [(ohi + 1, hi)] + cur[i + 1:]))
            cur[i] = meet((lo, hi), (olo, ohi))
        return pieces

    def top_germs(self):
        """Germs of rank equal to the atom's rank."""
        choices = []
        for i, (lo, hi) in enumerate(self.bounds):
            k = interval_kind((lo, hi))
            if k == UP:
                choices.append([("d", i, 1)])
            elif k == DOWN:
                choices.append([("d", i, -1)])
            elif k == FREE:
                choices.append([("d", i, 1), ("d", i, -1)])
            else:
                choices.append([("o", i, v) for v in range(lo, hi + 1)])
        germs = []
        for combo in product(*choices):
            dirs = tuple((i, s) for t, i, s in combo if t == "d")
            off = tuple((i, v) for t, i, v in combo if t == "o")
            germs.append(Germ(dirs, off))
        return germs

    def germ_count(self):
        n = 1
        for lo, hi in self.bounds:
            if lo is None and hi is None:
                n *= 2
            elif lo is not None and hi is not None:
                n *= hi - lo + 1
        return n

    def contains_germ(self, g):
        for i, s in g.dirs:
            lo, hi = self.bounds[i]
            if (s > 0 and hi is not None) or (s < 0 and lo is not None):
                return False
        return all(_in_interval(v, self.bounds[i]) for i, v in g.off)

    def orthants(self):
        """Split into orthant atoms: free axes at 0, ranges into points."""
        choices = []
        for lo, hi in self.bounds:
            k = interval_kind((lo, hi))
            if k == FREE:
                choices.append([(0, None), (None, -1)])
            elif k == RANGE:
                choices.append([(v, v) for v in range(lo, hi + 1)])
            else:
                choices.append([(lo, hi)])
        return [BoxAtom(c) for c in product(*choices)]

    def sort_key(self):
        if self._key is None:
            axes = []
            for iv in self.bounds:
                k = interval_kind(iv)
                axes.append((_KIND_ORDER[k], iv[0] if iv[0] is not None else 0,
                             iv[1] if iv[1] is not None else 0))
            self._key = (self.rank, tuple(axes))
        return self._key

    def __eq__(self, other):
        return isinstance(other, BoxAtom) and self.bounds == other.bounds

    def __hash__(self):
        return hash(self.bounds)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return format_atom(self)


def _check_dim(n, m):
    if n != m:
        raise DimensionError(f"ambient dimensions differ: {n} vs {m}")


class Germ:
    """Commensurability class of an orthant: signed directions plus the
    coordinates on all remaining axes."""

    __slots__ = ("dirs", "off")

    def __init__(self, dirs, off):
        self.dirs = tuple(sorted((int(i), int(s)) for i, s in dirs))
        self.off = tuple(sorted((int(i), int(v)) for i, v in off))
        axes = [i for i, _ in self.dirs]
        if len(set(axes)) != len(axes):
            raise ValueError("germ directions must use distinct axes")
        if set(axes) & {i for i, _ in self.off}:
            raise ValueError("off-coordinates overlap the direction axes")

    @property
    def rank(self):
        return len(self.dirs)

    @property
    def ambient(self):
        return len(self.dirs) + len(self.off)

    @property
    def indicator(self):
        return self.dirs

    def axes(self):
        return frozenset(i for i, _ in self.dirs)

    def representative(self):
        """The orthant of this germ based at the off-coordinates and 0."""
        off = dict(self.off)
        base = [off.get(i, 0) for i in range(self.ambient)]
        return BoxAtom.orthant(base, dict(self.dirs))

    def __eq__(self, other):
        return isinstance(other, Germ) and self.dirs == other.dirs and self.off == other.off

    def __hash__(self):
        return hash((self.dirs, self.off))

    def __lt__(self, other):
        return (self.rank, self.dirs, self.off) < (other.rank, other.dirs, other.off)

    def __repr__(self):
        d = ",".join(f"{'+' if s > 0 else '-'}{i}" for i, s in self.dirs)
        o = ",".join(f"x{i}={v}" for i, v in self.off)
        return f"Germ({d}|{o})"


def germ_leq(g, h):
    """g <= h: directions of g inside those of h and the off-coordinates
    agree on every axis outside the directions of h."""
    _check_dim(g.ambient, h.ambient)
    if not set(g.dirs) <= set(h.dirs):
        return False
    goff = dict(g.off)
    return all(goff[i] == v for i, v in h.off)


def indicators(n):
    """All signed direction sets in Z^n (3^n of them)."""
    out = []
    for signs in product((0, 1, -1), repeat=n):
        out.append(tuple((i, s) for i, s in enumerate(signs) if s))
    return out


def _merge_atoms(atoms):
    atoms = list(atoms)
    changed = True
    while changed:
        changed = False
        for i, j in combinations(range(len(atoms)), 2):
            a, b = atoms[i].bounds, atoms[j].bounds
            diff = [k for k in range(len(a)) if a[k] != b[k]]
            if len(diff) != 1:
                continue
            k = diff[0]
            joined = _adjacent(a[k], b[k])
            if joined is None:
                continue
            atoms[i] = BoxAtom(a[:k] + (joined,) + a[k + 1:])
            del atoms[j]
            changed = True
            break
    return atoms


def disjointify(atoms):
    """Sequential subtraction in input order."""
    out = []
    for atom in atoms:
        pieces = [atom]
        for prev in out:
            pieces = [q for p in pieces for q in p.subtract(prev)]
            if not pieces:
                break
        out.extend(pieces)
    return out


class OrthohedralSet:
    """Finite disjoint union of box atoms, kept in canonical order."""

    __slots__ = ("ambient", "atoms")

    def __init__(self, ambient, atoms=(), disjoint=False):
        atoms = list(atoms)
        for a in atoms:
            _check_dim(ambient, a.ambient)
        if not disjoint:
            atoms = disjointify(atoms)
        self.ambient = ambient
        self.atoms = tuple(sorted(_merge_atoms(atoms)))

    @classmethod
    def empty(cls, ambient):
        return cls(ambient, (), disjoint=True)

    @classmethod
    def whole(cls, ambient):
        return cls(ambient, [BoxAtom([(None, None)] * ambient)], disjoint=True)

    def is_empty(self):
        return not self.atoms

    def contains(self, p):
        return any(a.contains(p) for a in self.atoms)

    @property
    def rank(self):
        return max((a.rank for a in self.atoms), default=0)

    @property
    def height(self):
        r = self.rank
        return sum(a.germ_count() for a in self.atoms if a.rank == r) if self.atoms else 0

    def union(self, other):
        _check_dim(self.ambient, other.ambient)
        return OrthohedralSet(self.ambient, list(self.atoms) + list(other.atoms))

    def intersection(self, other):
        _check_dim(self.ambient, other.ambient)
        out = []
        for a in self.atoms:
            for b in other.atoms:
                c = a.intersect(b)
                if c is not None:
                    out.append(c)
        return OrthohedralSet(self.ambient, out, disjoint=True)

    def difference(self, other):
        _check_dim(self.ambient, other.ambient)
        pieces = list(self.atoms)
        for b in other.atoms:
            pieces = [q for p in pieces for q in p.subtract(b)]
        return OrthohedralSet(self.ambient, pieces, disjoint=True)

    def complement(self):
        return OrthohedralSet.whole(self.ambient).difference(self)

    def is_subset(self, other):
        return self.difference(other).is_empty()

    def is_disjoint(self, other):
        return self.intersection(other).is_empty()

    def orthants(self):
        return [o for a in self.atoms for o in a.orthants()]

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def __eq__(self, other):
        if not isinstance(other, OrthohedralSet):
            return NotImplemented
        return equal_sets(self, other)

    def __hash__(self):
        return hash((self.ambient, self.atoms))

    def __repr__(self):
        return format_set(self)


def intersect_atoms(a, b):
    c = a.intersect(b)
    return OrthohedralSet(a.ambient, [] if c is None else [c], disjoint=True)


def complement(s):
    return s.complement()


def union(s, t):
    return s.union(t)


def subtract(s, t):
    return s.difference(t)


def equal_sets(s, t):
    _check_dim(s.ambient, t.ambient)
    if s.atoms == t.atoms:
        return True
    return s.difference(t).is_empty() and t.difference(s).is_empty()


def check_disjoint(s):
    """True when the atoms of s are pairwise disjoint."""
    return all(a.intersect(b) is None for a, b in combinations(s.atoms, 2))


Invariants = namedtuple("Invariants", "rank height")


def invariants(s):
    return Invariants(s.rank, s.height)


def germ_count_at_rank(s, k):
    """Number of rank-k germs of a set of rank at most k."""
    if s.is_empty() or s.rank < k:
        return 0
    if s.rank > k:
        raise ValueError(f"set has rank {s.rank} > {k}")
    return s.height


def max_germs(s):
    cands = set()
    for a in s.atoms:
        cands.update(a.top_germs())
    cands = sorted(cands, key=lambda g: -g.rank)
    out = []
    for g in cands:
        if not any(g.rank < h.rank and germ_leq(g, h) for h in out):
            out.append(g)
    return sorted(out)


IndicatorData = namedtuple("IndicatorData", "tau height_function quasi_normal")


def indicator_data(s):
    """Indicator set, height function on indicators, quasi-normality."""
    n = s.ambient
    hs = {}
    for g in max_germs(s):
        hs[g.indicator] = hs.get(g.indicator, 0) + 1
    seen = {d for a in s.atoms for d in (g.indicator for g in a.top_germs())}
    maximal = {z for z in seen if not any(set(z) < set(w) for w in seen)}
    tau = OrthohedralSet(n, [BoxAtom.orthant([0] * n, dict(z)) for z in maximal])
    return IndicatorData(tau, hs, set(hs) == maximal)


def skeleton(orthant, k):
    """Union of the rank-k faces of an orthant atom."""
    if not orthant.is_orthant():
        raise ValueError("skeleton needs an orthant (no range or free axes)")
    dirs = orthant.directions()
    if not 0 <= k <= len(dirs):
        raise ValueError(f"face rank {k} out of range 0..{len(dirs)}")
    base = orthant.base_point()
    faces = [BoxAtom.orthant(base, dict(f)) for f in combinations(dirs, k)]
    return OrthohedralSet(orthant.ambient, faces)


def skeleton_stack(orthants, k):
    """Rank-k skeleton of a stack of parallel orthants."""
    out = []
    for o in orthants:
        out.extend(skeleton(o, k).atoms)
    return OrthohedralSet(orthants[0].ambient, out)


SkeletonStructure = namedtuple("SkeletonStructure", "directions rank bases")


def skeleton_structure(s):
    """Recognise s as the rank-n skeleton of a stack of rank-r orthants.

    Returns the common signed directions Y (|Y| = r), n, and the base point
    of each component.  Raises ValueError when s has another shape.
    """
    if s.is_empty() or s.rank == 0:
        raise ValueError("not a skeleton stack: empty or rank 0")
    n = s.rank
    germs = max_germs(s)
    if any(g.rank != n for g in germs):
        raise ValueError("not a skeleton stack: lower-rank maximal germ")
    ydirs = sorted({d for g in germs for d in g.dirs})
    yaxes = [i for i, _ in ydirs]
    if len(set(yaxes)) != len(yaxes):
        raise ValueError("not a skeleton stack: opposite directions on one axis")
    ysign = dict(ydirs)
    groups = {}
    for g in germs:
        key = tuple((i, v) for i, v in g.off if i not in ysign)
        groups.setdefault(key, set()).add(g.dirs)
    faces = set(combinations(ydirs, n))
    bases = []
    for key, found in sorted(groups.items()):
        if found != faces:
            raise ValueError("not a skeleton stack: component misses faces")
        fixed = dict(key)
        coset = BoxAtom([(fixed[i], fixed[i]) if i in fixed else (None, None)
                         for i in range(s.ambient)])
        part = s.intersection(OrthohedralSet(s.ambient, [coset], disjoint=True))
        base = []
        for i in range(s.ambient):
            if i in fixed:
                base.append(fixed[i])
            elif ysign[i] > 0:
                base.append(min(a.bounds[i][0] for a in part.atoms))
            else:
                base.append(max(a.bounds[i][1] for a in part.atoms))
        bases.append(tuple(base))
    rebuilt = skeleton_stack([BoxAtom.orthant(b, ysign) for b in bases], n)
    if not equal_sets(rebuilt, s):
        raise ValueError("not a skeleton stack: points outside the faces")
    return SkeletonStructure(tuple(ydirs), n, bases)


RegularPoints = namedtuple("RegularPoints", "interior singular component_count")


def face_interiors(base, ydirs, n):
    """Regular points of each rank-n face: the face pushed by its diagonal."""
    out = []
    for f in combinations(ydirs, n):
        b = list(base)
        for i, sgn in f:
            b[i] += sgn
        out.append(BoxAtom.orthant(b, dict(f)))
    return out


def regular_points(s):
    st = skeleton_structure(s)
    atoms = [a for b in st.bases for a in face_interiors(b, st.directions, st.rank)]
    interior = OrthohedralSet(s.ambient, atoms, disjoint=True)
    return RegularPoints(interior, s.difference(interior), len(st.bases))


def orthant_boundary(orthant):
    """L minus its diagonal unit translate."""
    dirs = orthant.directions()
    b = list(orthant.base_point())
    for i, sgn in dirs:
        b[i] += sgn
    inner = BoxAtom.orthant(b, dict(dirs))
    return OrthohedralSet(orthant.ambient, orthant.subtract(inner), disjoint=True)


def binomial_height(r, n):
    return comb(r, n)


# literal notation ---------------------------------------------------------

def _fmt_int(v, wrap):
    return f"({v})" if wrap and v < 0 else str(v)


def format_interval(iv):
    k = interval_kind(iv)
    lo, hi = iv
    if k == FIX:
        return str(lo)
    if k == UP:
        return _fmt_int(lo, True) + "+"
    if k == DOWN:
        return _fmt_int(hi, True) + "-"
    if k == RANGE:
        return f"{_fmt_int(lo, True)}..{_fmt_int(hi, True)}"
    return "free"


def format_atom(a):
    return "[" + ",".join(format_interval(iv) for iv in a.bounds) + "]"


def format_set(s):
    return "{" + ",".join(format_atom(a) for a in s.atoms) + "}"


_NUM = r"\(?(-?\d+)\)?"
_PATTERNS = [
    (re.compile(rf"^{_NUM}\.\.{_NUM}$"), lambda m: (int(m[1]), int(m[2]))),
    (re.compile(rf"^{_NUM}\+$"), lambda m: (int(m[1]), None)),
    (re.compile(rf"^{_NUM}-$"), lambda m: (None, int(m[1]))),
    (re.compile(rf"^{_NUM}$"), lambda m: (int(m[1]), int(m[1]))),
    (re.compile(r"^free$"), lambda m: (None, None)),
]


def parse_interval(tok):
    tok = tok.strip()
    for pat, conv in _PATTERNS:
        m = pat.match(tok)
        if m:
            return conv(m)
    raise ValueError(f"bad axis constraint {tok!r}")


def parse_atom(text):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"atom literal must be bracketed: {text!r}")
    return BoxAtom([parse_interval(t) for t in text[1:-1].split(",")])


def parse_set(text, ambient=None):
    text = text.strip()
    if text.startswith("{"):
        text = text[1:-1]
    atoms = [parse_atom(m) for m in re.findall(r"\[[^\]]*\]", text)]
    if ambient is None:
        if not atoms:
            raise ValueError("empty literal needs an ambient dimension")
        ambient = atoms[0].ambient
    return OrthohedralSet(ambient, atoms)
