"""JSON encodings for sets, maps, graphs and tree pairs."""

import json

from .homology import ColoredGraph
from .lattice import BoxAtom, OrthohedralSet, interval_kind, parse_set, FIX, UP, DOWN, RANGE
from .maps import Isometry, PiecewiseMap
from .trees import TreeError, _parse_vertex, children, make_pair, vertex_str


def constraint_to_json(iv):
    k = interval_kind(iv)
    lo, hi = iv
    if k == FIX:
        return {"fix": lo}
    if k == UP:
        return {"up": lo}
    if k == DOWN:
        return {"down": hi}
    if k == RANGE:
        return {"range": [lo, hi]}
    return "free"


def constraint_from_json(c):
    if c == "free":
        return (None, None)
    if not isinstance(c, dict) or len(c) != 1:
        raise ValueError(f"bad constraint {c!r}")
    (k, v), = c.items()
    if k == "fix":
        return (int(v), int(v))
    if k == "up":
        return (int(v), None)
    if k == "down":
        return (None, int(v))
    if k == "range":
        lo, hi = v
        return (int(lo), int(hi))
    raise ValueError(f"bad constraint kind {k!r}")


def atom_to_json(a):
    return [constraint_to_json(iv) for iv in a.bounds]


def atom_from_json(d):
    return BoxAtom([constraint_from_json(c) for c in d])


def set_to_json(s):
    return {"ambient": s.ambient, "atoms": [atom_to_json(a) for a in s.atoms]}


def set_from_json(d, ambient=None):
    """A set from its JSON object or from a set literal string."""
    if isinstance(d, str):
        return parse_set(d, ambient)
    if not isinstance(d, dict) or "ambient" not in d:
        raise ValueError("set object needs 'ambient' and 'atoms'")
    n = int(d["ambient"])
    atoms = [atom_from_json(a) for a in d.get("atoms", [])]
    for a in atoms:
        if a.ambient != n:
            raise ValueError(f"atom of dimension {a.ambient} in a set of dimension {n}")
    return OrthohedralSet(n, atoms)


def isometry_to_json(iso):
    return {"perm": iso.perm_code(), "shift": list(iso.shift)}


def isometry_from_json(d, n):
    perm = d.get("perm", list(range(1, n + 1)))
    if len(perm) != n:
        raise ValueError("perm length differs from the dimension")
    pairs = []
    for p in perm:
        p = int(p)
        if p == 0:
            raise ValueError("perm entries are signed 1-based axis indices")
        pairs.append((abs(p) - 1, 1 if p > 0 else -1))
    return Isometry(pairs, d.get("shift", [0] * n))


def map_to_json(f):
    return {"domain": set_to_json(f.domain),
            "pieces": [dict(atom=atom_to_json(a), **isometry_to_json(iso)) for a, iso in f.pieces]}


def map_from_json(d):
    dom = set_from_json(d["domain"])
    n = dom.ambient
    pieces = []
    for p in d.get("pieces", []):
        a = atom_from_json(p["atom"])
        pieces.append((a, isometry_from_json(p, n)))
    return PiecewiseMap(dom, pieces, merge=False)


def graph_to_json(g):
    return {"colors": list(g.colors), "edges": [list(e) for e in sorted(g.edges)]}


def graph_from_json(d):
    return ColoredGraph(list(d["colors"]), {tuple(e) for e in d.get("edges", [])})


def _tree_to_json(v, inner, roots):
    if v not in inner:
        return vertex_str(v, roots)
    a, b = children(v)
    return [_tree_to_json(a, inner, roots), _tree_to_json(b, inner, roots)]


def _tree_from_json(t, v, inner, roots):
    if isinstance(t, str):
        if _parse_vertex(t, roots) != v:
            raise TreeError(f"leaf label {t!r} does not match its position {vertex_str(v, roots)!r}")
        return
    if not isinstance(t, list) or len(t) != 2:
        raise TreeError("a caret is a two-element list")
    inner.add(v)
    a, b = children(v)
    _tree_from_json(t[0], a, inner, roots)
    _tree_from_json(t[1], b, inner, roots)


def forest_to_json(inner, roots):
    return [_tree_to_json((r, ""), inner, roots) for r in range(roots)]


def forest_from_json(items, roots):
    if len(items) != roots:
        raise TreeError(f"need one tree per root ({roots})")
    inner = set()
    for r, t in enumerate(items):
        _tree_from_json(t, (r, ""), inner, roots)
    return inner


def tree_to_json(e):
    m = e.roots
    out = {"roots": m,
           "domain": forest_to_json(e.domain, m),
           "range": forest_to_json(e.range, m),
           "leaves": [[vertex_str(a, m), vertex_str(b, m)] for a, b in e.leaf_map]}
    if e.inner_map is not None:
        out["inner"] = [[vertex_str(a, m), vertex_str(b, m)] for a, b in e.inner_map]
    return out


def tree_from_json(d):
    m = int(d.get("roots", 1))
    dom = forest_from_json(d["domain"], m)
    ran = forest_from_json(d["range"], m)
    lm = {_parse_vertex(a, m): _parse_vertex(b, m) for a, b in d["leaves"]}
    if len(lm) != len(d["leaves"]):
        raise TreeError("repeated leaf in the leaf bijection")
    im = None
    if "inner" in d and d["inner"] is not None:
        im = {_parse_vertex(a, m): _parse_vertex(b, m) for a, b in d["inner"]}
    return make_pair(m, dom, ran, lm, im)


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2)
