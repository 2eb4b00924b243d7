"""pet- and pei-normal forms with explicit witness bijections.

The pet-normal form is built in place: every orthant whose indicator is not
maximal is fed into a parallel face of an orthant with a larger indicator
(an infinite-hotel shift), so the normal form is a subset of the input.

The pei-normal form is a stack of h(S) orthants of rank rk(S) in standard
position: directions +e_0..+e_{k-1}, stacked along axis k.  When rk(S) equals
the ambient dimension and the stack has two or more members, the set is first
embedded into one more dimension.
"""

from dataclasses import dataclass

from .lattice import BoxAtom, OrthohedralSet, invariants
from .maps import (Isometry, MapError, PiecewiseMap, compose, compose_all,
                   invert)


@dataclass
class NormalFormResult:
    normalized: OrthohedralSet
    witness: PiecewiseMap
    kind: str
    embedded: bool = False


def orthant_decomposition(s):
    return sorted(s.orthants())


def _maximal_indicators(orthants):
    inds = {o.directions() for o in orthants}
    return {z for z in inds if not any(set(z) < set(w) for w in inds)}


def is_pet_normal(s):
    orths = orthant_decomposition(s)
    maximal = _maximal_indicators(orths)
    return all(o.directions() in maximal for o in orths)


def is_stack(s):
    """Pairwise disjoint parallel orthants, all of the same rank."""
    orths = orthant_decomposition(s)
    return len({o.directions() for o in orths}) <= 1


def orthant_isometry(source, target_base, target_dirs):
    """Isometry taking the orthant ``source`` onto the orthant at
    ``target_base`` spanned by ``target_dirs`` (same rank)."""
    src_dirs = source.directions()
    target_dirs = tuple(sorted(target_dirs))
    if len(src_dirs) != len(target_dirs):
        raise MapError("orthants of different rank")
    n = source.ambient
    perm = [None] * n
    for (j, s), (i, t) in zip(src_dirs, target_dirs):
        perm[i] = (j, s * t)
    rest_out = [i for i in range(n) if perm[i] is None]
    used = {j for j, _ in src_dirs}
    rest_in = [j for j in range(n) if j not in used]
    for i, j in zip(rest_out, rest_in):
        perm[i] = (j, 1)
    lin = Isometry(perm, [0] * n)
    moved = lin(source.base_point())
    return Isometry(perm, [b - m for b, m in zip(target_base, moved)])


def feed_map(domain, guest, host, guest_iso=None):
    """Bijection domain -> domain - guest absorbing the orthant ``guest``
    into the orthant ``host``.

    With ``guest_iso`` None the guest must have an indicator strictly
    inside the host's and is moved by a translation; otherwise the guest is
    rotated onto the face spanned by the host's first rk(guest) directions.
    """
    zhost = host.directions()
    if guest_iso is None:
        zguest = guest.directions()
        if not set(zguest) < set(zhost):
            raise MapError("guest is not parallel to a proper face of the host")
    else:
        zguest = zhost[:guest.rank]
        if guest.rank >= host.rank:
            raise MapError("guest rank must be below the host rank")
    y = next(d for d in zhost if d not in zguest)
    a = host.base_point()
    face = BoxAtom.orthant(a, dict(zguest + (y,)))
    slot = BoxAtom.orthant(a, dict(zguest))
    step = [0] * host.ambient
    step[y[0]] = y[1]
    ident = Isometry.identity(host.ambient)
    n = domain.ambient
    rest = domain.difference(OrthohedralSet(n, [host, guest], disjoint=True))
    pieces = [(x, ident) for x in rest.atoms]
    pieces += [(x, ident) for x in host.subtract(face)]
    pieces.append((face, Isometry.translation(step)))
    if guest_iso is None:
        shift = [p - q for p, q in zip(slot.base_point(), guest.base_point())]
        pieces.append((guest, Isometry.translation(shift)))
    else:
        pieces.append((guest, orthant_isometry(guest, a, zguest)))
    return PiecewiseMap(domain, pieces)


def feed_stack(guests, stack):
    """pet-bijection guests ∪ stack -> stack.

    Every orthant of ``guests`` must be parallel to a proper face of the
    orthants of ``stack``; feeding a guest of full rank would change the
    number of maximal germs and is refused.
    """
    hosts = orthant_decomposition(stack)
    if len({h.directions() for h in hosts}) > 1:
        raise MapError("host is not a stack of parallel orthants")
    if not guests.is_disjoint(stack):
        raise MapError("guest set meets the stack")
    domain = guests.union(stack)
    if guests.is_empty():
        return PiecewiseMap.identity(stack)
    current = OrthohedralSet(domain.ambient, orthant_decomposition(domain), disjoint=True)
    w = PiecewiseMap.identity(domain)
    for g in orthant_decomposition(guests):
        m = feed_map(current, g, hosts[0])
        w = compose(w, m)
        current = current.difference(OrthohedralSet(current.ambient, [g], disjoint=True))
    return w


def pet_normal_form(s):
    orths = orthant_decomposition(s)
    maximal = _maximal_indicators(orths)
    keep = [o for o in orths if o.directions() in maximal]
    guests = [o for o in orths if o.directions() not in maximal]
    if not guests:
        return NormalFormResult(s, PiecewiseMap.identity(s), "pet")
    n = s.ambient
    current = OrthohedralSet(n, orths, disjoint=True)
    w = PiecewiseMap.identity(s)
    for g in sorted(guests, key=lambda o: (-o.rank, o.sort_key())):
        zg = set(g.directions())
        host = next(o for o in keep if zg < set(o.directions()))
        w = compose(w, feed_map(current, g, host))
        current = current.difference(OrthohedralSet(n, [g], disjoint=True))
    return NormalFormResult(OrthohedralSet(n, keep, disjoint=True), w, "pet")


def embed_set(s):
    """S x {0} inside Z^{N+1}."""
    return OrthohedralSet(s.ambient + 1, [BoxAtom(a.bounds + ((0, 0),)) for a in s.atoms],
                          disjoint=True)


def strip_embedding(f, ambient):
    """Restrict a map between subsets of Z^N x {0} back to Z^N.

    A piece may route the extra axis through an axis on which its atom is
    constant; such a piece is rewritten as an isometry of Z^N with the same
    values on the atom."""
    pieces = []
    for a, iso in f.pieces:
        perm, shift = list(iso.perm), list(iso.shift)
        src = perm[ambient][0]
        if src != ambient:
            i = next(i for i, (j, _) in enumerate(perm) if j == ambient)
            value = iso(a.base_point())[i]
            perm[i] = (src, 1)
            shift[i] = value - a.bounds[src][0]
        atom = BoxAtom(a.bounds[:ambient])
        pieces.append((atom, Isometry(perm[:ambient], shift[:ambient])))
    dom = OrthohedralSet(ambient, [BoxAtom(a.bounds[:ambient]) for a in f.domain.atoms],
                         disjoint=True)
    return PiecewiseMap(dom, pieces)


def standard_stack(ambient, rank, height):
    dirs = {i: 1 for i in range(rank)}
    out = []
    for i in range(height):
        base = [0] * ambient
        base[rank] = i
        out.append(BoxAtom.orthant(base, dirs))
    return out


def pei_normal_form(s):
    if s.is_empty() or is_stack(s):
        return NormalFormResult(s, PiecewiseMap.identity(s), "pei")
    k, h = invariants(s)
    pet = pet_normal_form(s)
    orths = orthant_decomposition(pet.normalized)
    tops = [o for o in orths if o.rank == k]
    lows = [o for o in orths if o.rank < k]
    n = s.ambient
    if h == 1:
        host = tops[0]
        current = OrthohedralSet(n, orths, disjoint=True)
        steps = [pet.witness]
        for g in lows:
            steps.append(feed_map(current, g, host, guest_iso=True))
            current = current.difference(OrthohedralSet(n, [g], disjoint=True))
        return NormalFormResult(OrthohedralSet(n, [host], disjoint=True),
                                compose_all(steps), "pei")
    if k == n:
        inner = pei_normal_form(embed_set(s))
        inner.embedded = True
        return inner
    stack = standard_stack(n, k, h)
    placed, pieces = [], []
    for o, t in zip(tops, stack):
        pieces.append((o, orthant_isometry(o, t.base_point(), t.directions())))
    for j, o in enumerate(lows):
        base = [0] * n
        base[k] = -(j + 1)
        dirs = tuple((i, 1) for i in range(o.rank))
        placed.append(BoxAtom.orthant(base, dict(dirs)))
        pieces.append((o, orthant_isometry(o, base, dirs)))
    steps = [pet.witness, PiecewiseMap(pet.normalized, pieces)]
    current = OrthohedralSet(n, stack + placed, disjoint=True)
    for g in placed:
        steps.append(feed_map(current, g, stack[0]))
        current = current.difference(OrthohedralSet(n, [g], disjoint=True))
    return NormalFormResult(OrthohedralSet(n, stack, disjoint=True), compose_all(steps), "pei")


def height_function_of_normal_form(s):
    counts = {}
    for o in orthant_decomposition(s):
        counts[o.directions()] = counts.get(o.directions(), 0) + 1
    return counts


def _matching(src, dst, pet):
    """Bijection between two unions of orthants pairing them in sorted order
    within each indicator (pet) or within each rank (pei)."""
    groups = {}
    for o in orthant_decomposition(src):
        groups.setdefault(o.directions() if pet else o.rank, [[], []])[0].append(o)
    for o in orthant_decomposition(dst):
        groups.setdefault(o.directions() if pet else o.rank, [[], []])[1].append(o)
    pieces = []
    for key, (xs, ys) in groups.items():
        if len(xs) != len(ys):
            return None
        for x, y in zip(xs, ys):
            pieces.append((x, orthant_isometry(x, y.base_point(), y.directions())))
    return PiecewiseMap(src, pieces)


def are_pet_isomorphic(s, t):
    """An explicit pet-bijection s -> t, or None when none exists."""
    if s.ambient != t.ambient:
        return None
    a, b = pet_normal_form(s), pet_normal_form(t)
    if height_function_of_normal_form(a.normalized) != height_function_of_normal_form(b.normalized):
        return None
    mid = _matching(a.normalized, b.normalized, pet=True)
    return compose_all([a.witness, mid, invert(b.witness)])


def are_pei_isomorphic(s, t):
    """An explicit pei-bijection s -> t when rank and height agree, else None."""
    if s.ambient != t.ambient or invariants(s) != invariants(t):
        return None
    a, b = pei_normal_form(s), pei_normal_form(t)
    if a.embedded != b.embedded:
        return None
    mid = _matching(a.normalized, b.normalized, pet=False)
    if mid is None:
        return None
    w = compose_all([a.witness, mid, invert(b.witness)])
    return strip_embedding(w, s.ambient) if a.embedded else w
