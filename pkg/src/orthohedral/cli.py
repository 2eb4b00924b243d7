"""Command-line front end.  Every command prints one JSON document.

Exit codes: 0 success, 2 invalid input, 3 size cap exceeded.
"""

import argparse
import json
import sys

from . import boundary as bd
from . import encoding as enc
from . import homology as hom
from . import lattice as lat
from . import maps as mp
from . import normal_forms as nf
from . import poset as ps
from . import trees as tr

EXIT_OK, EXIT_INVALID, EXIT_CAP = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": message}), file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _read(path):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    text = text.strip()
    if text == "{}":
        return text
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        if text.startswith("{["):
            return text
        raise


def _set(path, ambient=None):
    d = _read(path)
    if d == "{}" and ambient is None:
        ambient = 1
    return enc.set_from_json(d, ambient)


def _map(path):
    f = enc.map_from_json(_read(path))
    mp.validate(f)
    return f


def _germ_json(g):
    return {"dirs": [[i, s] for i, s in g.dirs], "off": [[i, v] for i, v in g.off]}


def cmd_set(a):
    if a.action == "invariants":
        s = _set(a.set, a.dim)
        inv = lat.invariants(s)
        return {"rank": inv.rank, "height": inv.height}
    if a.action == "op":
        x = _set(a.a, a.dim)
        if a.op == "complement":
            return enc.set_to_json(x.complement())
        if a.b is None:
            raise ValueError(f"--b is required for {a.op}")
        y = _set(a.b, x.ambient)
        out = {"union": x.union, "intersection": x.intersection, "difference": x.difference}[a.op](y)
        return enc.set_to_json(out)
    if a.action == "equal":
        x = _set(a.a, a.dim)
        return {"equal": lat.equal_sets(x, _set(a.b, x.ambient))}
    raise ValueError(a.action)


def cmd_map(a):
    if a.action == "validate":
        f = enc.map_from_json(_read(a.f))
        comps = _components(_set(a.skeleton)) if a.skeleton else None
        return dict(mp.validate(f, comps)._asdict())
    if a.action == "compose":
        return enc.map_to_json(mp.compose(_map(a.f), _map(a.g)))
    if a.action == "invert":
        return enc.map_to_json(mp.invert(_map(a.f)))
    if a.action == "height":
        return {"height": mp.injection_height(_map(a.f))}
    raise ValueError(a.action)


def _components(skeleton):
    """Maximal germs grouped by component of the regular points of a skeleton stack."""
    basis = ps.component_basis(skeleton)
    return [[g for o in r for g in o.top_germs()] for r in basis.regions]


def cmd_normalize(a):
    s = _set(a.set)
    res = nf.pet_normal_form(s) if a.kind == "pet" else nf.pei_normal_form(s)
    return {"normalized": enc.set_to_json(res.normalized), "witness": enc.map_to_json(res.witness),
            "kind": res.kind, "embedded": res.embedded}


def cmd_germs(a):
    s = _set(a.set)
    data = lat.indicator_data(s)
    return {"max_germs": [_germ_json(g) for g in lat.max_germs(s)],
            "height_function": [{"indicator": [[i, v] for i, v in z], "height": h}
                                for z, h in sorted(data.height_function.items())],
            "tau": enc.set_to_json(data.tau),
            "quasi_normal": data.quasi_normal}


def cmd_series(a):
    g = _map(a.f)
    lv = mp.series_membership(g, a.level)
    return {"level": a.level, "in_c": lv.in_c, "in_k": lv.in_k,
            "finite_support": mp.has_finite_support(g)}


def _basis(a, s):
    return ps.component_basis(s) if a.basis == "component" else ps.orthant_basis(s)


def cmd_poset(a):
    s = _set(a.set)
    basis = _basis(a, s)
    f = _map(a.f)
    if a.action == "decompose":
        b = _map(a.b[0])
        d = ps.maximal_decompose(basis, b, f)
        if d is None:
            return {"maximal": False}
        return {"maximal": True, "region": d.region,
                "region_set": enc.set_to_json(basis.region_set(d.region)),
                "boundary_part": enc.map_to_json(d.boundary_part),
                "residual_part": enc.map_to_json(d.residual_part)}
    if a.action == "glb":
        bs = [_map(p) for p in a.b]
        cond = ps.lower_bound_conditions(basis, bs, f)
        delta = ps.common_lower_bound(basis, bs, f)
        out = {"distinct_units": cond.distinct_units, "disjoint_boundaries": cond.disjoint_boundaries,
               "delta": None if delta is None else enc.map_to_json(delta)}
        if delta is not None:
            out["height"] = mp.injection_height(delta)
        return out
    raise ValueError(a.action)


def cmd_complex(a):
    g = enc.graph_from_json(_read(a.graph))
    if a.action == "verdict":
        v = hom.wedge_verdict(g, a.colors, cap=a.cap)
        return {"concentratedDegree": v.concentrated_degree, "sphereCount": v.sphere_count,
                "pass": v.passed, "betti": v.betti, "torsion": v.torsion}
    c = hom.flag_complex(g, a.max_dim, cap=a.cap)
    p = hom.homology(c, cap=a.cap)
    return {"reduced": True, "betti": p.betti, "torsion": p.torsion,
            "simplices": {str(d): len(v) for d, v in c.simplices.items()}, "complete": c.complete}


def cmd_bounds(a):
    return bd.fl_report(_set(a.set), a.flavor).as_dict()


def cmd_tree(a):
    if a.action == "classify":
        d = _read(a.forest)
        comps = d["components"] if isinstance(d, dict) else d
        res = tr.classify_forest(comps)
        return {"k": res.k, "moves": res.moves, "copiesClaim": res.copies_claim}
    e = enc.tree_from_json(_read(a.e))
    if a.action == "compose":
        f = enc.tree_from_json(_read(a.f))
        return enc.tree_to_json(tr.reduce_pair(tr.compose(e, f)))
    if a.action == "to-v":
        v = tr.to_v(e)
        return {"element": enc.tree_to_json(v), "identity": tr.is_identity(v),
                "finite_support": tr.has_finite_support(e)}
    if a.action == "invert":
        return enc.tree_to_json(tr.invert(e))
    raise ValueError(a.action)


def cmd_selftest(a):
    from .selftest import run_selftest
    return run_selftest(a.seed, a.count)


def build_parser():
    p = _Parser(prog="orthohedral", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("set", help="set invariants and Boolean operations")
    s.add_argument("action", choices=["invariants", "op", "equal"])
    s.add_argument("--set")
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--dim", type=int, help="ambient dimension for empty literals")
    s.add_argument("--op", choices=["union", "intersection", "difference", "complement"], default="union")
    s.set_defaults(func=cmd_set)

    m = sub.add_parser("map", help="piecewise isometries")
    m.add_argument("action", choices=["validate", "compose", "invert", "height"])
    m.add_argument("--f", required=True)
    m.add_argument("--g")
    m.add_argument("--skeleton",
                   help="skeleton stack whose components drive the super-diagonal test")
    m.set_defaults(func=cmd_map)

    n = sub.add_parser("normalize", help="pet- or pei-normal form with witness")
    n.add_argument("--kind", choices=["pet", "pei"], required=True)
    n.add_argument("--set", required=True)
    n.set_defaults(func=cmd_normalize)

    g = sub.add_parser("germs", help="maximal germs and height function")
    g.add_argument("--set", required=True)
    g.set_defaults(func=cmd_germs)

    r = sub.add_parser("series", help="membership in the germ stabiliser series")
    r.add_argument("--f", required=True)
    r.add_argument("--level", type=int, required=True)
    r.set_defaults(func=cmd_series)

    q = sub.add_parser("poset", help="maximal elements and lower bounds")
    q.add_argument("action", choices=["decompose", "glb"])
    q.add_argument("--set", required=True)
    q.add_argument("--basis", choices=["orthant", "component"], default="orthant")
    q.add_argument("--f", required=True)
    q.add_argument("--b", action="append", required=True)
    q.set_defaults(func=cmd_poset)

    c = sub.add_parser("complex", help="flag complexes of colored graphs")
    c.add_argument("action", choices=["verdict", "homology"])
    c.add_argument("--graph", required=True)
    c.add_argument("--colors", type=int)
    c.add_argument("--max-dim", type=int)
    c.add_argument("--cap", type=int, default=hom.DEFAULT_CAP)
    c.set_defaults(func=cmd_complex)

    b = sub.add_parser("bounds", help="finiteness length bounds")
    b.add_argument("action", choices=["fl"])
    b.add_argument("--set", required=True)
    b.add_argument("--flavor", choices=["pet", "pei"], required=True)
    b.set_defaults(func=cmd_bounds)

    t = sub.add_parser("tree", help="tree-pair elements")
    t.add_argument("action", choices=["compose", "invert", "to-v", "classify"])
    t.add_argument("--e")
    t.add_argument("--f")
    t.add_argument("--forest")
    t.set_defaults(func=cmd_tree)

    st = sub.add_parser("selftest", help="window-oracle self test")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--count", type=int, default=50)
    st.set_defaults(func=cmd_selftest)
    return p


def _check_required(a):
    need = {
        ("set", "invariants"): ["set"], ("set", "op"): ["a"], ("set", "equal"): ["a", "b"],
        ("map", "compose"): ["g"], ("complex", "verdict"): ["colors"],
        ("tree", "compose"): ["e", "f"], ("tree", "invert"): ["e"], ("tree", "to-v"): ["e"],
        ("tree", "classify"): ["forest"],
    }
    for k in need.get((a.command, getattr(a, "action", None)), []):
        if getattr(a, k) is None:
            raise ValueError(f"--{k} is required for {a.command} {a.action}")


def run(argv=None, out=None):
    out = out or sys.stdout
    try:
        a = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        _check_required(a)
        result = a.func(a)
    except hom.CapExceeded as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return EXIT_CAP
    except (ValueError, KeyError, TypeError, OSError, RecursionError) as e:
        print(json.dumps({"error": f"{type(e).__name__}: {e}"}), file=sys.stderr)
        return EXIT_INVALID
    print(enc.dumps(result), file=out)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
