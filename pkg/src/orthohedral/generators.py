"""Seeded random instances: sets, pet/pei maps, poset configurations."""

import random

from .lattice import BoxAtom, OrthohedralSet, orthant_boundary
from .maps import Isometry, PiecewiseMap, compose, compose_all, image_set
from .normal_forms import feed_map, orthant_decomposition, orthant_isometry
from .poset import diagonal_vector, make_maximal


def rng_from(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_interval(rng, lo=-5, hi=5):
    k = rng.randrange(5)
    a = rng.randint(lo, hi)
    if k == 0:
        return (a, a)
    if k == 1:
        b = rng.randint(lo, hi)
        return (min(a, b), max(a, b))
    if k == 2:
        return (a, None)
    if k == 3:
        return (None, a)
    return (None, None)


def random_atom(rng, n, lo=-5, hi=5):
    return BoxAtom([random_interval(rng, lo, hi) for _ in range(n)])


def random_set(rng, n, max_atoms=3, lo=-5, hi=5):
    k = rng.randint(0, max_atoms)
    return OrthohedralSet(n, [random_atom(rng, n, lo, hi) for _ in range(k)])


def random_orthant(rng, n, rank, lo=-5, hi=5, positive=False):
    axes = rng.sample(range(n), rank)
    dirs = {i: 1 if positive else rng.choice((1, -1)) for i in axes}
    base = [rng.randint(0 if positive else lo, hi) for _ in range(n)]
    return BoxAtom.orthant(base, dirs)


def random_disjoint_orthants(rng, n, count, max_rank=None, lo=-5, hi=5, tries=200):
    """Up to ``count`` pairwise disjoint orthants of rank <= max_rank."""
    max_rank = n if max_rank is None else max_rank
    out = []
    for _ in range(tries):
        if len(out) == count:
            break
        o = random_orthant(rng, n, rng.randint(0, max_rank), lo, hi)
        if all(o.intersect(p) is None for p in out):
            out.append(o)
    return out


def stack(base, dirs, spacing_axis, count, step=1):
    out = []
    for i in range(count):
        b = list(base)
        b[spacing_axis] += i * step
        out.append(BoxAtom.orthant(b, dirs))
    return out


# pet / pei elements -----------------------------------------------------------

def translate_pieces(s, rng, spread=6, tries=100):
    """A pet-bijection from s onto a random image: each orthant piece of s is
    translated independently, images kept disjoint."""
    pieces = orthant_decomposition(s)
    for _ in range(tries):
        moves = []
        images = []
        ok = True
        for o in pieces:
            v = [rng.randint(-spread, spread) for _ in range(s.ambient)]
            iso = Isometry.translation(v)
            img = iso.image_atom(o)
            if any(img.intersect(x) is not None for x in images):
                ok = False
                break
            images.append(img)
            moves.append((o, iso))
        if ok:
            return PiecewiseMap(s, moves)
    return PiecewiseMap.identity(s)


def point_transposition(s, p, q):
    """Swap two points of s."""
    p, q = tuple(p), tuple(q)
    if p == q:
        return PiecewiseMap.identity(s)
    two = OrthohedralSet(s.ambient, [BoxAtom.point(p), BoxAtom.point(q)], disjoint=True)
    rest = s.difference(two)
    ident = Isometry.identity(s.ambient)
    pieces = [(a, ident) for a in rest.atoms]
    pieces.append((BoxAtom.point(p), Isometry.translation([b - a for a, b in zip(p, q)])))
    pieces.append((BoxAtom.point(q), Isometry.translation([a - b for a, b in zip(p, q)])))
    return PiecewiseMap(s, pieces)


def orthant_swap(s, o1, o2):
    iso1 = orthant_isometry(o1, o2.base_point(), o2.directions())
    iso2 = orthant_isometry(o2, o1.base_point(), o1.directions())
    rest = s.difference(OrthohedralSet(s.ambient, [o1, o2], disjoint=True))
    ident = Isometry.identity(s.ambient)
    return PiecewiseMap(s, [(a, ident) for a in rest.atoms] + [(o1, iso1), (o2, iso2)])


def houghton_move(s, o1, o2, axis):
    """Pull o1 back by one step along ``axis``, push o2 forward; the base
    slab of o1 goes onto the base slab of o2.  o1, o2 parallel."""
    dirs = dict(o1.directions())
    sign = dirs[axis]
    step = [0] * s.ambient
    step[axis] = sign
    back = [-c for c in step]
    b1, b2 = o1.base_point(), o2.base_point()
    slab1 = BoxAtom(o1.bounds[:axis] + ((b1[axis], b1[axis]),) + o1.bounds[axis + 1:])
    upper1 = Isometry.translation(step).image_atom(o1)
    rest = s.difference(OrthohedralSet(s.ambient, [o1, o2], disjoint=True))
    ident = Isometry.identity(s.ambient)
    pieces = [(a, ident) for a in rest.atoms]
    pieces += [(upper1, Isometry.translation(back)),
               (slab1, Isometry.translation([q - p for p, q in zip(b1, b2)])),
               (o2, Isometry.translation(step))]
    return PiecewiseMap(s, pieces)


def random_points(rng, s, k, half_width=6):
    """Up to k distinct points of s found by rejection in a window."""
    pts = set()
    atoms = list(s.atoms)
    if not atoms:
        return []
    for _ in range(50 * k):
        if len(pts) >= k:
            break
        a = rng.choice(atoms)
        p = []
        for lo, hi in a.bounds:
            lo2 = lo if lo is not None else (hi if hi is not None else 0) - half_width
            hi2 = hi if hi is not None else lo2 + half_width
            p.append(rng.randint(lo2, hi2))
        pts.add(tuple(p))
    return sorted(pts)


def random_pet_element(rng, s, steps=3):
    """Random pet-permutation of s built from point swaps, swaps of parallel
    orthants and Houghton-style moves."""
    orths = orthant_decomposition(s)
    moves = []
    for _ in range(steps):
        kind = rng.randrange(3)
        if kind == 1 or kind == 2:
            by_dirs = {}
            for o in orths:
                by_dirs.setdefault(o.directions(), []).append(o)
            groups = [g for d, g in by_dirs.items() if len(g) >= 2 and d]
            if groups:
                g = rng.choice(groups)
                o1, o2 = rng.sample(g, 2)
                if kind == 1:
                    moves.append(orthant_swap(s, o1, o2))
                else:
                    axis = rng.choice([i for i, _ in o1.directions()])
                    moves.append(houghton_move(s, o1, o2, axis))
                continue
        pts = random_points(rng, s, 2)
        if len(pts) == 2:
            moves.append(point_transposition(s, *pts))
    if not moves:
        return PiecewiseMap.identity(s)
    return compose_all(moves)


def random_pei_element(rng, s, steps=3):
    """Like random_pet_element, with rotations between orthants of equal rank."""
    orths = orthant_decomposition(s)
    moves = [random_pet_element(rng, s, steps)]
    same = {}
    for o in orths:
        same.setdefault(o.rank, []).append(o)
    groups = [g for r, g in same.items() if len(g) >= 2 and r > 0]
    if groups:
        o1, o2 = rng.sample(rng.choice(groups), 2)
        moves.append(orthant_swap(s, o1, o2))
    return compose_all(moves)


def cone_translation(s, o, k):
    """Self-injection of s translating the orthant o by k times its diagonal."""
    rest = s.difference(OrthohedralSet(s.ambient, [o], disjoint=True))
    ident = Isometry.identity(s.ambient)
    return PiecewiseMap(s, [(a, ident) for a in rest.atoms] +
                        [(o, Isometry.translation(diagonal_vector(o, k)))])


def random_self_injection(rng, s, steps=2):
    """Random pei self-injection of a disjoint union of orthants."""
    orths = orthant_decomposition(s)
    n = s.rank
    parts = []
    for _ in range(steps):
        kind = rng.randrange(3)
        tops = [o for o in orths if o.rank == n]
        if kind == 0 and tops:
            parts.append(cone_translation(s, rng.choice(tops), rng.randint(1, 2)))
        elif kind == 1:
            lows = [o for o in orths if 0 < o.rank < n]
            pairs = [(g, h) for g in lows for h in tops if len(h.directions()) > g.rank]
            pairs = [(g, h) for g, h in pairs if set(g.directions()) < set(h.directions())]
            if pairs:
                g, h = rng.choice(pairs)
                dom = OrthohedralSet(s.ambient, orths, disjoint=True)
                fm = feed_map(dom, g, h)
                parts.append(PiecewiseMap(s, fm.pieces))
            else:
                parts.append(random_pei_element(rng, s, 1))
        else:
            parts.append(random_pei_element(rng, s, 2))
    return compose_all(parts)


# poset instances ---------------------------------------------------------------

def finitary_permutation(rng, s, swaps=2, half_width=4):
    moves = [PiecewiseMap.identity(s)]
    for _ in range(swaps):
        pts = random_points(rng, s, 2, half_width)
        if len(pts) == 2:
            moves.append(point_transposition(s, *pts))
    return compose_all(moves)


def diagonal_element(rng, basis, lam, swaps=2):
    """compose(p, unit_power(lam)) with p a random finitary pet-permutation."""
    p = finitary_permutation(rng, basis.domain, swaps)
    return compose(p, basis.unit_power(lam))


def boundary_injection(basis, f_lam, i, target, layer):
    """Send the boundary of every orthant of region i into layer ``layer``
    of the free margin of the matching orthant of region ``target``;
    requires 0 <= layer < f_lam[target].  Orthants are matched in sorted
    order and carried onto each other by orthant_isometry, which is a
    translation when they are parallel."""
    src = basis.regions[i]
    dst = basis.regions[target]
    edge = basis.boundary(i)
    pieces = []
    for o, p in zip(src, dst):
        onto = orthant_isometry(o, p.base_point(), p.directions())
        iso = onto.then(Isometry.translation(diagonal_vector(p, layer)))
        for a in orthant_boundary(o).atoms:
            pieces.append((a, iso))
    return PiecewiseMap(edge, pieces)


def lower_bound_instance(rng, basis, max_lambda=3, size=None):
    """(f, B, choices, lam) with B a list of maximal elements below f.
    Each choice is (region, target, layer).  Regions need the same number
    of orthants, as in a stack or a skeleton stack."""
    k = len(basis)
    lam = [rng.randint(1, max_lambda) for _ in range(k)]
    f = diagonal_element(rng, basis, lam)
    size = size or rng.randint(1, min(k + 1, 4))
    choices, bs = [], []
    for _ in range(size):
        i = rng.randrange(k)
        t = rng.randrange(k)
        layer = rng.randrange(lam[t])
        cp = boundary_injection(basis, lam, i, t, layer)
        choices.append((i, t, layer))
        bs.append(make_maximal(basis, f, i, cp))
    return f, bs, choices, lam


def complement(f):
    return f.domain.difference(image_set(f))
