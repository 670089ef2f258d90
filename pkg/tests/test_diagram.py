import itertools
import random
from pathlib import Path

import pytest

from yamadapoly.diagram import (
    SPINS,
    DiagramError,
    Node,
    SpatialDiagram,
    circle_diagram,
    close_terminals,
    edge_diagram,
    infinity_minus,
    infinity_plus,
    kink_diagram,
    merge_vertices,
    mirror_diagram,
    parse_diagram,
    resolve,
    serialize_diagram,
    two_vertex_union,
)
from yamadapoly.graph import canonical_key, family
from yamadapoly.hpoly import h_delcon
from yamadapoly.ring import LaurentPoly

from conftest import random_diagram

DATA = Path(__file__).resolve().parent.parent / "data"


def theta_diagram(s):
    """Crossing-free s parallel edges between terminals u and v."""
    arcs = {f"e{i}": ("u", i, "v", i) for i in range(s)}
    return SpatialDiagram({"u": Node("vertex", s), "v": Node("vertex", s)}, arcs, ("u", "v"))


def same_graph(g1, g2):
    return canonical_key(g1.vertices, g1.edge_multiset()) == canonical_key(g2.vertices, g2.edge_multiset())


# -- parsing -----------------------------------------------------------------------


def test_infplus_file_parses_to_one_crossing_bead():
    d = parse_diagram((DATA / "infplus.diagram").read_text())
    assert d.vertices == ["u", "v"] and d.crossings == ["c"]
    assert d.terminals == ("u", "v")
    assert d == infinity_plus()


@pytest.mark.parametrize("make", [infinity_plus, infinity_minus, edge_diagram, circle_diagram, kink_diagram])
def test_serialize_round_trip(make):
    d = make()
    assert parse_diagram(serialize_diagram(d)) == d


def test_random_round_trip(rng):
    for _ in range(30):
        d = random_diagram(rng, rng.randint(0, 5))
        again = parse_diagram(serialize_diagram(d))
        assert again == d
        assert serialize_diagram(again) == serialize_diagram(d)


@pytest.mark.parametrize(
    "text",
    [
        "vertex u ports 2\narc e: u.0 u.0\n",  # port used twice
        "vertex u ports 2\narc e: u.0 w.0\n",  # unknown node
        "vertex u ports 2\n",  # dangling ports
        "crossing c\narc a: c.0 c.1\n",  # half the crossing is unmatched
        "vertex u ports 1\narc e: u.0 u.3\n",  # missing port
        "vertex u ports 2\nvertex u ports 2\n",
        "blob x\n",
        "vertex u ports 2\narc e: u.0 u.1\nterminals u u\n",
        "vertex u ports 2\ncrossing c\narc e: u.0 u.1\narc a: c.0 c.1\narc b: c.2 c.3\nterminals u c\n",
    ],
)
def test_malformed_diagrams_rejected(text):
    with pytest.raises(DiagramError):
        parse_diagram(text)


def test_comments_and_blank_lines_ignored():
    text = "# a circle\n\nvertex v ports 2   # one vertex\narc e: v.0 v.1\n"
    assert parse_diagram(text) == circle_diagram()


# -- mirror ------------------------------------------------------------------------


def test_mirror_of_infplus_is_infminus():
    m = mirror_diagram(infinity_plus())
    assert m == infinity_minus()
    assert m != infinity_plus()


def test_mirror_is_an_involution(rng):
    for _ in range(30):
        d = random_diagram(rng, rng.randint(0, 6))
        assert mirror_diagram(mirror_diagram(d)) == d


@pytest.mark.parametrize("make", [edge_diagram, circle_diagram, lambda: theta_diagram(3)])
def test_crossing_free_diagram_is_its_own_mirror(make):
    d = make()
    assert mirror_diagram(d) == d


def test_mirror_swaps_kink_sign():
    assert mirror_diagram(kink_diagram(True)) == kink_diagram(False)


# -- close_terminals --------------------------------------------------------------


def test_closing_an_edge_gives_a_one_loop_graph():
    g, w = resolve(close_terminals(edge_diagram()), {})
    assert w == LaurentPoly.const(1)
    assert same_graph(g, family("cycle", 1))


@pytest.mark.parametrize("s", range(1, 6))
def test_closing_a_theta_gives_a_bouquet(s):
    g, _ = resolve(close_terminals(theta_diagram(s)), {})
    assert same_graph(g, family("bouquet", s))


def test_close_without_terminals_fails():
    with pytest.raises(DiagramError):
        close_terminals(circle_diagram())


def test_merge_rejects_repeats_and_crossings():
    d = infinity_plus()
    with pytest.raises(DiagramError):
        merge_vertices(d, ["u", "u"])
    with pytest.raises(DiagramError):
        merge_vertices(d, ["u", "c"])


def _terminal_diagrams(rng, count):
    out = []
    while len(out) < count:
        d = random_diagram(rng, rng.randint(0, 3), vertices=rng.randint(2, 3))
        vs = d.vertices
        out.append(d.with_terminals((vs[0], vs[1])))
    return out


def test_close_commutes_with_resolve(rng):
    for d in _terminal_diagrams(rng, 25):
        closed = close_terminals(d)
        u, v = d.terminals
        for spins in itertools.product(SPINS, repeat=len(d.crossings)):
            state = dict(zip(d.crossings, spins))
            g, w = resolve(d, state)
            gc, wc = resolve(closed, state)
            # resolve numbers graph nodes in natural order of their ids
            nodes = [n for n in sorted(d.nodes, key=lambda x: (0, int(x), "") if x.isdigit() else (1, 0, x))
                     if d.nodes[n].kind == "vertex" or state[n] == "zero"]
            merged = g.identify_vertices(nodes.index(u), nodes.index(v))
            assert w == wc
            assert same_graph(merged, gc)
            assert h_delcon(merged) == h_delcon(gc)


# -- resolve -----------------------------------------------------------------------


def test_crossing_free_resolution_is_the_underlying_graph():
    g, w = resolve(theta_diagram(3), {})
    assert w == LaurentPoly.const(1)
    assert same_graph(g, family("theta", 3))


def test_kink_states():
    d = kink_diagram(True)
    g, w = resolve(d, {"c": "plus"})
    # two small loops, each a fresh vertex with a loop edge
    assert w == LaurentPoly.monomial(1) and g.p == 2 and g.q == 2
    g, w = resolve(d, {"c": "minus"})
    assert w == LaurentPoly.monomial(-1) and g.p == 1 and g.q == 1
    g, w = resolve(d, {"c": "zero"})
    assert w == LaurentPoly.const(1)
    assert same_graph(g, family("bouquet", 2))


def test_infplus_zero_state_is_a_theta_with_a_middle_vertex():
    g, _ = resolve(infinity_plus(), {"c": "zero"})
    assert g.p == 3 and g.q == 4
    assert sorted(g.degree(v) for v in g.vertices) == [2, 2, 4]


def test_weight_counts_plus_minus_difference(rng):
    for _ in range(20):
        d = random_diagram(rng, rng.randint(1, 5))
        state = {c: rng.choice(SPINS) for c in d.crossings}
        _, w = resolve(d, state)
        k = sum(s == "plus" for s in state.values()) - sum(s == "minus" for s in state.values())
        assert w == LaurentPoly.monomial(k)


def test_edges_are_conserved_by_zero_state(rng):
    # turning every crossing into a vertex keeps all arcs as edges
    for _ in range(20):
        d = random_diagram(rng, rng.randint(0, 5))
        g, _ = resolve(d, {c: "zero" for c in d.crossings})
        assert g.q == len(d.arcs)
        assert g.p == len(d.nodes)


def test_missing_or_unknown_spin():
    with pytest.raises(DiagramError):
        resolve(infinity_plus(), {})
    with pytest.raises(DiagramError):
        resolve(infinity_plus(), {"c": "sideways"})


def test_two_vertex_union_of_edges_is_two_parallel_edges():
    d = two_vertex_union(edge_diagram(), edge_diagram())
    g, _ = resolve(d, {})
    assert same_graph(g, family("theta", 2))
    assert d.terminals == ("u", "v")
