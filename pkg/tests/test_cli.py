import io
import json
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from orthohedral import encoding as enc
from orthohedral import generators as gen
from orthohedral.cli import run
from orthohedral.homology import gen_multipartite, gen_random_admissible
from orthohedral.lattice import parse_set
from orthohedral.maps import PiecewiseMap, maps_equal
from orthohedral.trees import elements_equal, random_element, thompson_generators


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    text = out.getvalue()
    return code, (json.loads(text) if text else None), text


@pytest.fixture
def write(tmp_path):
    def _write(name, payload):
        p = tmp_path / name
        p.write_text(payload if isinstance(payload, str) else json.dumps(payload))
        return str(p)
    return _write


def test_bounds_on_a_ray_stack(write):
    p = write("s.json", "{[0+,0],[0+,1],[0+,2]}")
    code, d, _ = call("bounds", "fl", "--set", p, "--flavor", "pet")
    assert code == 0 and d["lower"] == 2 and d["upper"] == 2 and d["provenance"]


def test_invariants_of_empty_set(write):
    code, d, _ = call("set", "invariants", "--set", write("e.txt", "{}"))
    assert code == 0 and d == {"rank": 0, "height": 0}
    code, d, _ = call("set", "invariants", "--set", write("z.json", enc.set_to_json(parse_set("{[free,free]}"))))
    assert d == {"rank": 2, "height": 4}


def test_set_operations(write):
    a = write("a.txt", "{[0+,0+]}")
    b = write("b.txt", "{[(-2)+,1]}")
    code, d, _ = call("set", "op", "--a", a, "--b", b, "--op", "intersection")
    assert code == 0 and enc.set_from_json(d) == parse_set("{[0+,1]}")
    code, d, _ = call("set", "op", "--a", a, "--op", "complement")
    assert enc.set_from_json(d) == parse_set("{[0+,0+]}").complement()
    code, d, _ = call("set", "equal", "--a", a, "--b", a)
    assert d == {"equal": True}


def test_selftest():
    code, d, _ = call("selftest", "--seed", "1", "--count", "5")
    assert code == 0 and d["ok"]
    assert all(v["passed"] == v["total"] == 5 for v in d["suites"].values())


def test_map_commands(write):
    s = parse_set("{[0+,0],[0+,1]}")
    g = gen.random_pet_element(random.Random(2), s)
    f = write("f.json", enc.map_to_json(g))
    code, d, _ = call("map", "validate", "--f", f)
    assert code == 0 and d["bijective"] and d["pet"]
    code, d, _ = call("map", "invert", "--f", f)
    code2, d2, _ = call("map", "compose", "--f", f, "--g", write("g.json", d))
    assert maps_equal(enc.map_from_json(d2), PiecewiseMap.identity(s))
    code, d, _ = call("map", "height", "--f", f)
    assert d == {"height": 0}


def test_normalize_germs_series(write):
    p = write("s.txt", "{[0+,0+],[0+,(-5)]}")
    code, d, _ = call("normalize", "--kind", "pet", "--set", p)
    assert code == 0 and enc.set_from_json(d["normalized"]) == parse_set("{[0+,0+]}")
    code, d, _ = call("germs", "--set", p)
    assert code == 0 and len(d["max_germs"]) == 1
    t = gen.point_transposition(parse_set("{[0+,0+]}"), (0, 0), (1, 1))
    code, d, _ = call("series", "--f", write("t.json", enc.map_to_json(t)), "--level", "1")
    assert code == 0 and d["in_k"] and d["finite_support"]


def test_complex_commands(write):
    g = write("g.json", enc.graph_to_json(gen_multipartite([3, 3])))
    code, d, _ = call("complex", "verdict", "--graph", g, "--colors", "2")
    assert code == 0 and d["pass"] and d["sphereCount"] == 4 and d["concentratedDegree"] == 1
    code, d, _ = call("complex", "homology", "--graph", g)
    assert d["betti"] == [0, 4]
    assert call("complex", "homology", "--graph", g, "--cap", "3")[0] == 3


def test_tree_commands(write):
    a, b = thompson_generators()
    pa, pb = write("a.json", enc.tree_to_json(a)), write("b.json", enc.tree_to_json(b))
    code, d, _ = call("tree", "compose", "--e", pa, "--f", pb)
    assert code == 0 and enc.tree_from_json(d).is_v
    code, d, _ = call("tree", "invert", "--e", pa)
    code, d, _ = call("tree", "compose", "--e", pa, "--f", write("ai.json", d))
    assert enc.tree_from_json(d).domain == frozenset()
    code, d, _ = call("tree", "to-v", "--e", pa)
    assert d["identity"] is False and d["finite_support"] is False
    forest = write("forest.json", {"components": [{"kind": "T0"}, {"kind": "T0"}]})
    code, d, _ = call("tree", "classify", "--forest", forest)
    assert d["k"] == -1 and d["copiesClaim"] == -2


def test_poset_commands(write):
    from orthohedral.poset import make_maximal, orthant_basis
    s = parse_set("{[0+,0],[0+,1],[0+,2]}")
    basis = orthant_basis(s)
    f = gen.diagonal_element(random.Random(2), basis, [2, 2, 2])
    b1 = make_maximal(basis, f, 0, gen.boundary_injection(basis, [2, 2, 2], 0, 2, 0))
    b2 = make_maximal(basis, f, 1, gen.boundary_injection(basis, [2, 2, 2], 1, 2, 1))
    ps, pf = write("s.txt", "{[0+,0],[0+,1],[0+,2]}"), write("f.json", enc.map_to_json(f))
    p1, p2 = write("b1.json", enc.map_to_json(b1)), write("b2.json", enc.map_to_json(b2))
    code, d, _ = call("poset", "decompose", "--set", ps, "--f", pf, "--b", p1)
    assert code == 0 and d["maximal"] and d["region"] == 0
    code, d, _ = call("poset", "glb", "--set", ps, "--f", pf, "--b", p1, "--b", p2)
    assert code == 0 and d["distinct_units"] and d["delta"] is not None
    assert d["height"] == 6 - 2


def test_exit_codes(write):
    bad = write("bad.json", "{not json")
    assert call("set", "invariants", "--set", bad)[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("set", "invariants")[0] == 2
    assert call("bounds", "fl", "--set", write("q.txt", "{[0+]}"), "--flavor", "xx")[0] == 2
    notadm = write("g.json", {"colors": [0, 1, 1], "edges": [[0, 1], [0, 2]]})
    assert call("complex", "verdict", "--graph", notadm, "--colors", "2")[0] == 2
    badtree = write("t.json", {"roots": 1, "domain": [["0", "1"]], "range": ["x"], "leaves": []})
    assert call("tree", "invert", "--e", badtree)[0] == 2


def test_console_entry_point(write):
    p = write("s.txt", "{[0+,0],[0+,1],[0+,2]}")
    proc = subprocess.run([sys.executable, "-m", "orthohedral.cli", "bounds", "fl", "--set", p,
                           "--flavor", "pet"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["upper"] == 2


def test_output_is_deterministic(write):
    p = write("s.txt", "{[0+,0+],[3,(-2)-],[(-1)-,4]}")
    outs = [call("normalize", "--kind", "pei", "--set", p)[2] for _ in range(3)]
    assert outs[0] == outs[1] == outs[2]
    outs = [call("selftest", "--seed", "9", "--count", "3")[2] for _ in range(2)]
    assert outs[0] == outs[1]


# round trips ------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_json_round_trips(seed):
    rng = random.Random(seed)
    s = gen.random_set(rng, rng.randint(1, 3), max_atoms=3)
    assert enc.set_from_json(json.loads(enc.dumps(enc.set_to_json(s)))) == s
    o = gen.OrthohedralSet(2, gen.stack([0, 0], {0: 1}, 1, rng.randint(1, 3)), disjoint=True)
    f = gen.random_pet_element(rng, o)
    assert maps_equal(enc.map_from_json(json.loads(enc.dumps(enc.map_to_json(f)))), f)
    g = gen_random_admissible(2, [3, 4], seed)
    back = enc.graph_from_json(json.loads(enc.dumps(enc.graph_to_json(g))))
    assert back.colors == g.colors and back.edges == g.edges
    e = random_element(rng, rng.randint(1, 2), rng.randint(0, 4), v=rng.random() < 0.5)
    e2 = enc.tree_from_json(json.loads(enc.dumps(enc.tree_to_json(e))))
    assert e2 == e and elements_equal(e2, e)
    assert enc.tree_to_json(e2) == enc.tree_to_json(e)
