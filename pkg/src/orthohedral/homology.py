"""Colored graphs, flag complexes and exact reduced integral homology."""

import random
from collections import defaultdict, namedtuple
from dataclasses import dataclass
from itertools import combinations
from math import gcd

import networkx as nx

DEFAULT_CAP = 2000


class CapExceeded(RuntimeError):
    pass


class ColoringError(ValueError):
    pass


@dataclass
class ColoredGraph:
    colors: list
    edges: set

    def __post_init__(self):
        self.colors = [int(c) for c in self.colors]
        edges = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ColoringError(f"loop at vertex {u}")
            if not (0 <= u < len(self.colors) and 0 <= v < len(self.colors)):
                raise ColoringError(f"edge ({u}, {v}) uses an unknown vertex")
            if self.colors[u] == self.colors[v]:
                raise ColoringError(f"edge ({u}, {v}) joins two vertices of color {self.colors[u]}")
            edges.add((min(u, v), max(u, v)))
        self.edges = edges

    @property
    def vertex_count(self):
        return len(self.colors)

    def color_classes(self, h=None):
        h = max(self.colors) + 1 if h is None else h
        out = [[] for _ in range(h)]
        for v, c in enumerate(self.colors):
            if not 0 <= c < h:
                raise ColoringError(f"color {c} outside 0..{h - 1}")
            out[c].append(v)
        return out

    def neighbours(self):
        nb = defaultdict(set)
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return nb

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges)
        return g


def gen_multipartite(sizes):
    if any(s < 1 for s in sizes):
        raise ColoringError("part sizes must be positive")
    colors = [c for c, s in enumerate(sizes) for _ in range(s)]
    edges = {(u, v) for u, v in combinations(range(len(colors)), 2) if colors[u] != colors[v]}
    return ColoredGraph(colors, edges)


def check_conditions(g, h):
    """Every color class has two vertices, and any 2(h-1) vertices of other
    colors have two common neighbours in each class."""
    classes = g.color_classes(h)
    if any(len(c) < 2 for c in classes):
        return False
    nb = g.neighbours()
    for i, vi in enumerate(classes):
        outside = [v for v in range(g.vertex_count) if g.colors[v] != i]
        m = min(2 * (h - 1), len(outside))
        for us in combinations(outside, m):
            common = sum(1 for v in vi if all(u in nb[v] for u in us))
            if common < 2:
                return False
    return True


def gen_random_admissible(h, sizes, seed, keep_prob=0.0):
    """Delete edges of the complete multipartite graph in a seeded random
    order, keeping each deletion only if the conditions survive.  With
    ``keep_prob`` > 0 some deletable edges are kept at random."""
    if len(sizes) != h:
        raise ColoringError("need one part size per color")
    if any(s < 2 for s in sizes):
        raise ColoringError("part sizes must be at least 2")
    rng = random.Random(seed)
    g = gen_multipartite(sizes)
    order = sorted(g.edges)
    rng.shuffle(order)
    edges = set(g.edges)
    for e in order:
        if rng.random() < keep_prob:
            continue
        edges.discard(e)
        if not check_conditions(ColoredGraph(g.colors, edges), h):
            edges.add(e)
    return ColoredGraph(g.colors, edges)


@dataclass
class SimplicialComplex:
    simplices: dict   # dim -> sorted list of vertex tuples
    complete: bool = True

    @property
    def dim(self):
        return max(self.simplices, default=-1)

    def count(self):
        return sum(len(v) for v in self.simplices.values())

    def euler_characteristic(self):
        return sum((-1) ** d * len(v) for d, v in self.simplices.items())


def flag_complex(g, max_dim=None, cap=DEFAULT_CAP):
    """Cliques of g as simplices, up to dimension max_dim."""
    if max_dim is not None and max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    simp = defaultdict(list)
    total = 0
    complete = True
    for clique in nx.enumerate_all_cliques(g.to_networkx()):
        d = len(clique) - 1
        if max_dim is not None and d > max_dim:
            complete = False
            break
        total += 1
        if total > cap:
            raise CapExceeded(f"more than {cap} simplices")
        simp[d].append(tuple(sorted(clique)))
    return SimplicialComplex({d: sorted(v) for d, v in sorted(simp.items())}, complete)


def complex_from_facets(facets, cap=DEFAULT_CAP):
    simp = defaultdict(set)
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            for face in combinations(f, k):
                simp[k - 1].add(face)
    if sum(len(v) for v in simp.values()) > cap:
        raise CapExceeded(f"more than {cap} simplices")
    return SimplicialComplex({d: sorted(v) for d, v in sorted(simp.items())})


def cone(c):
    apex = 1 + max((v for s in c.simplices.get(0, []) for v in s), default=-1)
    facets = [s + (apex,) for d in c.simplices for s in c.simplices[d]] + [(apex,)]
    return complex_from_facets(facets)


class _Sparse:
    def __init__(self, nrows):
        self.rows = [dict() for _ in range(nrows)]
        self.cols = defaultdict(set)

    def put(self, i, j, v):
        if v:
            self.rows[i][j] = v
            self.cols[j].add(i)
        elif j in self.rows[i]:
            del self.rows[i][j]
            self.cols[j].discard(i)

    def row_sub(self, i, t, q):
        for j, v in list(self.rows[t].items()):
            self.put(i, j, self.rows[i].get(j, 0) - q * v)

    def col_sub(self, j, t, q):
        for i in list(self.cols[t]):
            self.put(i, j, self.rows[i].get(j, 0) - q * self.rows[i][t])


def smith_diagonal(entries, nrows):
    """Nonzero diagonal of the Smith normal form of a sparse integer matrix.

    ``entries`` maps (row, col) to an integer.  Returns the invariant factors
    in divisibility order (their count is the rank)."""
    a = _Sparse(nrows)
    for (i, j), v in entries.items():
        a.put(i, j, v)
    diag = []
    while True:
        best = None
        for i, row in enumerate(a.rows):
            for j, v in row.items():
                key = (abs(v), len(row) * len(a.cols[j]))
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            break
        _, i, j = best
        while True:
            p = a.rows[i][j]
            for k in list(a.cols[j]):
                if k != i:
                    a.row_sub(k, i, a.rows[k][j] // p)
            for l in list(a.rows[i]):
                if l != j:
                    a.col_sub(l, j, a.rows[i][l] // p)
            rest = [(abs(a.rows[k][j]), k, j) for k in a.cols[j] if k != i]
            rest += [(abs(a.rows[i][l]), i, l) for l in a.rows[i] if l != j]
            if not rest:
                break
            _, i, j = min(rest)
        diag.append(abs(a.rows[i][j]))
        a.put(i, j, 0)
    return _invariant_factors(diag)


def _invariant_factors(diag):
    d = sorted(diag)
    changed = True
    while changed:
        changed = False
        for x in range(len(d)):
            for y in range(x + 1, len(d)):
                g = gcd(d[x], d[y])
                if g != d[x]:
                    d[x], d[y] = g, d[x] * d[y] // g
                    changed = True
        d.sort()
    return d


HomologyProfile = namedtuple("HomologyProfile", "betti torsion reduced")


def boundary_entries(c, d):
    """Boundary matrix from d-simplices (columns) to (d-1)-simplices (rows);
    d = 0 maps to the augmentation row."""
    cols = c.simplices.get(d, [])
    if d == 0:
        return {(0, j): 1 for j in range(len(cols))}, 1
    index = {s: i for i, s in enumerate(c.simplices.get(d - 1, []))}
    out = {}
    for j, s in enumerate(cols):
        for k in range(len(s)):
            out[(index[s[:k] + s[k + 1:]], j)] = (-1) ** k
    return out, len(index)


def homology(c, cap=DEFAULT_CAP):
    """Reduced integral homology in degrees 0..dim (empty complex: all zero)."""
    if c.count() > cap:
        raise CapExceeded(f"more than {cap} simplices")
    top = c.dim
    factors = {}
    for d in range(0, top + 2):
        ent, nrows = boundary_entries(c, d)
        factors[d] = smith_diagonal(ent, nrows) if ent else []
    betti, torsion = [], []
    for d in range(0, top + 1):
        n = len(c.simplices.get(d, []))
        betti.append(n - len(factors[d]) - len(factors[d + 1]))
        torsion.append([x for x in factors[d + 1] if x > 1])
    return HomologyProfile(betti, torsion, True)


Verdict = namedtuple("Verdict", "concentrated_degree sphere_count passed betti torsion")


def wedge_verdict(g, h, cap=DEFAULT_CAP):
    if not check_conditions(g, h):
        raise ColoringError("graph does not satisfy the two color conditions")
    prof = homology(flag_complex(g, cap=cap), cap)
    betti, torsion = prof.betti, prof.torsion
    deg = h - 1
    ok = all(b == 0 for d, b in enumerate(betti) if d != deg) and not any(torsion)
    count = betti[deg] if deg < len(betti) else 0
    return Verdict(deg, count, ok, betti, torsion)
