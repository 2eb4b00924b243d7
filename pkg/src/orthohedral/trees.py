"""Tree-pair description of almost-planar permutations of a dyadic forest.

The vertex set is a forest of ``roots`` rooted binary trees; a vertex is a
pair (root, path) with path a string over "01".  With two roots this is the
vertex set of the trivalent tree after deleting one edge, which does not
change the permutation group in question.

An element is given by two finite full binary subforests X, X' (one tree per
root, possibly a bare root), a bijection of leaves and a bijection of inner
vertices.  A vertex below a leaf a, written a + w, goes to alpha(a) + w.
Dropping the inner bijection gives an element of Thompson's group V.
"""

import random
from collections import namedtuple
from dataclasses import dataclass


class TreeError(ValueError):
    pass


def children(v):
    r, p = v
    return (r, p + "0"), (r, p + "1")


def forest_leaves(roots, inner):
    out = []
    for r in range(roots):
        if (r, "") not in inner:
            out.append((r, ""))
    for v in inner:
        for c in children(v):
            if c not in inner:
                out.append(c)
    return sorted(out, key=vertex_key)


def vertex_key(v):
    return (v[0], len(v[1]), v[1])


def _check_forest(roots, inner):
    for r, p in inner:
        if not 0 <= r < roots or set(p) - {"0", "1"}:
            raise TreeError(f"bad vertex {(r, p)}")
        if p and (r, p[:-1]) not in inner:
            raise TreeError(f"vertex {(r, p)} has no parent in the tree")


@dataclass(frozen=True)
class TreePair:
    roots: int
    domain: frozenset
    range: frozenset
    leaf_map: tuple          # sorted (leaf, image) pairs
    inner_map: tuple = None  # None for elements of V

    @property
    def leaves(self):
        return dict(self.leaf_map)

    @property
    def inner(self):
        return None if self.inner_map is None else dict(self.inner_map)

    @property
    def is_v(self):
        return self.inner_map is None

    def depth(self):
        return max((len(p) + 1 for _, p in self.domain | self.range), default=0)


def make_pair(roots, domain, range_, leaf_map, inner_map=None):
    e = TreePair(roots, frozenset(domain), frozenset(range_),
                 tuple(sorted(dict(leaf_map).items(), key=lambda kv: vertex_key(kv[0]))),
                 None if inner_map is None else
                 tuple(sorted(dict(inner_map).items(), key=lambda kv: vertex_key(kv[0]))))
    validate_pair(e)
    return e


def validate_pair(e):
    _check_forest(e.roots, e.domain)
    _check_forest(e.roots, e.range)
    dl, rl = forest_leaves(e.roots, e.domain), forest_leaves(e.roots, e.range)
    lm = e.leaves
    if sorted(lm, key=vertex_key) != dl:
        raise TreeError("leaf bijection is not defined exactly on the domain leaves")
    if sorted(lm.values(), key=vertex_key) != rl:
        raise TreeError("leaf bijection is not onto the range leaves")
    if e.inner_map is not None:
        im = e.inner
        if set(im) != set(e.domain) or set(im.values()) != set(e.range) or len(set(im.values())) != len(im):
            raise TreeError("inner bijection does not match the inner vertices")
    return True


def identity(roots=1, v=False):
    leaves = {(r, ""): (r, "") for r in range(roots)}
    return make_pair(roots, (), (), leaves, None if v else {})


def act(e, v):
    im = e.inner
    if im is not None and v in im:
        return im[v]
    r, p = v
    lm = e.leaves
    for k in range(len(p) + 1):
        a = (r, p[:k])
        if a in lm:
            b = lm[a]
            return (b[0], b[1] + p[k:])
    raise TreeError(f"{v} lies inside the domain tree but has no inner image")


def _expand_at(e, a):
    lm, im = e.leaves, e.inner
    b = lm.pop(a)
    a0, a1 = children(a)
    b0, b1 = children(b)
    lm[a0], lm[a1] = b0, b1
    if im is not None:
        im[a] = b
    return TreePair(e.roots, e.domain | {a}, e.range | {b},
                    tuple(sorted(lm.items(), key=lambda kv: vertex_key(kv[0]))),
                    None if im is None else tuple(sorted(im.items(), key=lambda kv: vertex_key(kv[0]))))


def expand_domain(e, target):
    while True:
        missing = sorted(set(target) - e.domain, key=vertex_key)
        if not missing:
            return e
        e = _expand_at(e, missing[0])


def expand_range(e, target):
    while True:
        missing = sorted(set(target) - e.range, key=vertex_key)
        if not missing:
            return e
        back = {b: a for a, b in e.leaf_map}
        e = _expand_at(e, back[missing[0]])


def _closure(vs, roots=1):
    out = set()
    for v in vs:
        r, p = _parse_vertex(v, roots) if isinstance(v, str) else v
        for k in range(len(p) + 1):
            out.add((r, p[:k]))
    return out


def compose(e, f):
    """e first, then f."""
    if e.roots != f.roots:
        raise TreeError("elements live on forests with different root counts")
    if e.is_v != f.is_v:
        raise TreeError("cannot mix elements with and without inner bijections")
    u = e.range | f.domain
    e2, f2 = expand_range(e, u), expand_domain(f, u)
    fl, fi = f2.leaves, f2.inner
    lm = {a: fl[b] for a, b in e2.leaf_map}
    im = None if e2.is_v else {a: fi[b] for a, b in e2.inner_map}
    return make_pair(e.roots, e2.domain, f2.range, lm, im)


def compose_all(items):
    out = items[0]
    for x in items[1:]:
        out = compose(out, x)
    return out


def invert(e):
    lm = {b: a for a, b in e.leaf_map}
    im = None if e.is_v else {b: a for a, b in e.inner_map}
    return make_pair(e.roots, e.range, e.domain, lm, im)


def power(e, k):
    if k < 0:
        return power(invert(e), -k)
    out = identity(e.roots, v=e.is_v)
    for _ in range(k):
        out = compose(out, e)
    return out


def reduce_pair(e):
    """Cancel carets whose two leaves map to the two children of one vertex
    in order (and, with an inner bijection, whose top maps to that vertex)."""
    while True:
        lm, im = e.leaves, e.inner
        hit = None
        for v in sorted(e.domain, key=vertex_key, reverse=True):
            v0, v1 = children(v)
            if v0 not in lm or v1 not in lm:
                continue
            w0, w1 = lm[v0], lm[v1]
            if w0[0] != w1[0] or not w0[1] or w0[1][:-1] != w1[1][:-1]:
                continue
            if w0[1][-1] != "0" or w1[1][-1] != "1":
                continue
            w = (w0[0], w0[1][:-1])
            if im is not None and im[v] != w:
                continue
            hit = (v, w)
            break
        if hit is None:
            return e
        v, w = hit
        v0, v1 = children(v)
        del lm[v0], lm[v1]
        lm[v] = w
        if im is not None:
            del im[v]
        e = make_pair(e.roots, e.domain - {v}, e.range - {w}, lm, im)


def elements_equal(e, f):
    if e.roots != f.roots or e.is_v != f.is_v:
        return False
    u = e.domain | f.domain
    e2, f2 = expand_domain(e, u), expand_domain(f, u)
    return e2.leaf_map == f2.leaf_map and e2.inner_map == f2.inner_map and e2.range == f2.range


def is_identity(e):
    return elements_equal(e, identity(e.roots, v=e.is_v))


def to_v(e):
    return reduce_pair(TreePair(e.roots, e.domain, e.range, e.leaf_map, None))


def has_finite_support(e):
    """Only finitely many vertices move iff the induced element of V is trivial."""
    r = to_v(e)
    return not r.domain and all(a == b for a, b in r.leaf_map)


# constructors --------------------------------------------------------------

def _parse_vertex(s, roots):
    if ":" in s:
        r, p = s.split(":", 1)
        return (int(r), p)
    if roots != 1:
        raise TreeError(f"vertex {s!r} needs a root prefix")
    return (0, s)


def vertex_str(v, roots):
    return v[1] if roots == 1 else f"{v[0]}:{v[1]}"


def vertex_transposition(u, v, roots=1):
    """Swap two vertices, fixing everything else."""
    u = _parse_vertex(u, roots) if isinstance(u, str) else u
    v = _parse_vertex(v, roots) if isinstance(v, str) else v
    inner = _closure([u, v])
    im = {x: x for x in inner}
    im[u], im[v] = v, u
    leaves = forest_leaves(roots, inner)
    return make_pair(roots, inner, inner, {a: a for a in leaves}, im)


def leaf_permutation(inner, perm, roots=1, v=False):
    """Permute the leaves of one tree (given by its inner vertices), identity
    on the inner vertices; perm maps leaf positions in sorted order."""
    inner = _closure(inner, roots) if inner else set()
    leaves = forest_leaves(roots, inner)
    lm = {leaves[i]: leaves[perm[i]] for i in range(len(leaves))}
    return make_pair(roots, inner, inner, lm, None if v else {x: x for x in inner})


def from_leaf_lists(dom_inner, ran_inner, images, roots=1, v=False, inner_images=None):
    """Pair whose i-th domain leaf (left to right) goes to range leaf images[i]."""
    dom_inner, ran_inner = _closure(dom_inner, roots), _closure(ran_inner, roots)
    dl = _planar_leaves(roots, dom_inner)
    rl = _planar_leaves(roots, ran_inner)
    if len(dl) != len(rl):
        raise TreeError("leaf counts differ")
    lm = {dl[i]: rl[images[i]] for i in range(len(dl))}
    im = None
    if not v:
        di = sorted(dom_inner, key=_planar_key)
        ri = sorted(ran_inner, key=_planar_key)
        order = inner_images or list(range(len(di)))
        im = {di[i]: ri[order[i]] for i in range(len(di))}
    return make_pair(roots, dom_inner, ran_inner, lm, im)


def _planar_key(v):
    return (v[0], v[1])


def _planar_leaves(roots, inner):
    return sorted(forest_leaves(roots, inner), key=_planar_key)


def thompson_generators():
    """Standard generators A, B of F inside V (one root)."""
    a = from_leaf_lists(["", "0"], ["", "1"], [0, 1, 2], v=True)
    b = from_leaf_lists(["", "1", "10"], ["", "1", "11"], [0, 1, 2, 3], v=True)
    return a, b


def random_forest(rng, roots, n_inner):
    inner = set()
    for _ in range(n_inner):
        leaves = forest_leaves(roots, inner)
        inner.add(rng.choice(leaves))
    return inner


def random_element(rng, roots=1, size=3, v=False, finite=False):
    """Random pair with ``size`` inner vertices per side.  With finite=True
    the leaf bijection is the identity, so the support is finite."""
    dom = random_forest(rng, roots, size)
    ran = dom if finite else random_forest(rng, roots, size)
    dl, rl = forest_leaves(roots, dom), forest_leaves(roots, ran)
    if finite:
        lm = {a: a for a in dl}
    else:
        img = rl[:]
        rng.shuffle(img)
        lm = dict(zip(dl, img))
    im = None
    if not v:
        di = sorted(dom, key=vertex_key)
        ri = sorted(ran, key=vertex_key)
        rng.shuffle(ri)
        im = dict(zip(di, ri))
    return make_pair(roots, dom, ran, lm, im)


# forest types -----------------------------------------------------------------

ForestClass = namedtuple("ForestClass", "k moves copies_claim")


def classify_forest(components):
    """Type index k of a finite union of rooted trees, whole trivalent trees
    and isolated vertices, each tree possibly with finitely many vertices
    removed.

    ``components`` is a list of dicts {"kind": "T0" | "T1" | "T" | "point",
    "removed": r}.  The reduction moves are applied literally; the result
    T_k means one rooted tree with root of degree 2 plus k points (k >= 0),
    or such a tree with -k vertices removed (k < 0).  ``copies_claim`` is the
    index -m that the shortcut "m copies of T0 give T_{-m}" would assign when
    the input is m >= 2 disjoint T0's and nothing else; it is reported next
    to the computed k, which is 1 - m for such inputs.
    """
    moves = []
    t0_removed = []
    points = 0
    for c in components:
        kind = c.get("kind")
        r = int(c.get("removed", 0))
        if r < 0:
            raise TreeError("negative removal count")
        if kind == "point":
            if r:
                raise TreeError("an isolated vertex cannot lose vertices")
            points += 1
        elif kind == "T0":
            t0_removed.append(r)
        elif kind == "T1":
            moves.append("T1 -> T0 + point")
            t0_removed.append(r)
            points += 1
        elif kind == "T":
            moves.append("T -> T0 + T0")
            t0_removed += [r, 0]
        else:
            raise TreeError(f"unknown component kind {kind!r}")
    plain_copies = (all(c.get("kind") == "T0" and not c.get("removed", 0) for c in components)
                    and len(components) >= 2)
    trees = 0
    for r in t0_removed:
        trees += 1
        for _ in range(r):
            moves.append("T0 minus a vertex -> T0 + T0")
            trees += 1
    if trees == 0:
        raise TreeError("finite forest: no tree type")
    while trees >= 2 and points >= 1:
        moves.append("T0 + T0 + point -> T0")
        trees -= 1
        points -= 1
    k = points if trees == 1 else -(trees - 1)
    claim = -len(components) if plain_copies else None
    return ForestClass(k, moves, claim)


def seeded_rng(seed):
    return random.Random(seed)
