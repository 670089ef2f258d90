import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from yamadapoly.diagram import Node, SpatialDiagram
from yamadapoly.graph import MultiGraph
from yamadapoly.ring import LaurentPoly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

BIG = 2 ** 64


@st.composite
def laurent(draw, max_terms=12, bound=BIG, min_exp=-8, max_exp=8):
    exps = draw(st.lists(st.integers(min_exp, max_exp), max_size=max_terms, unique=True))
    return LaurentPoly({k: draw(st.integers(-bound, bound)) for k in exps})


@st.composite
def multigraphs(draw, max_vertices=5, max_edges=7, min_edges=0):
    p = draw(st.integers(1, max_vertices))
    q = draw(st.integers(min_edges, max_edges))
    pairs = [(draw(st.integers(0, p - 1)), draw(st.integers(0, p - 1))) for _ in range(q)]
    return MultiGraph.from_edges(pairs, range(p))


def random_multigraph(rng: random.Random, max_vertices=5, max_edges=7, min_edges=0, connected=False):
    while True:
        p = rng.randint(1, max_vertices)
        q = rng.randint(min_edges, max_edges)
        pairs = [(rng.randrange(p), rng.randrange(p)) for _ in range(q)]
        g = MultiGraph.from_edges(pairs, range(p))
        if not connected or g.is_connected():
            return g


def random_diagram(rng: random.Random, crossings: int, vertices: int = 2, max_degree: int = 4) -> SpatialDiagram:
    """Random combinatorial diagram: ports of all nodes matched up at random."""
    nodes = {f"c{i}": Node("crossing", 4) for i in range(crossings)}
    degs = [rng.randint(0, max_degree) for _ in range(vertices)]
    if (sum(degs) + 4 * crossings) % 2:
        degs[0] += 1
    for i, d in enumerate(degs):
        nodes[f"v{i}"] = Node("vertex", d)
    ports = [(n, k) for n, node in nodes.items() for k in range(node.degree)]
    rng.shuffle(ports)
    arcs = {f"a{i}": (*ports[2 * i], *ports[2 * i + 1]) for i in range(len(ports) // 2)}
    return SpatialDiagram(nodes, arcs)


def connected_multigraphs(max_edges: int):
    """One representative of every connected multigraph (loops allowed) up to ``max_edges`` edges."""
    from yamadapoly.graph import canonical_key

    level = {canonical_key([0], []): (1, ())}
    out = []
    for _ in range(max_edges):
        nxt = {}
        for p, pairs in level.values():
            cands = [(a, b) for a in range(p) for b in range(a, p)] + [(a, p) for a in range(p)]
            for a, b in cands:
                np_ = p + 1 if b == p else p
                new = pairs + ((a, b),)
                nxt.setdefault(canonical_key(range(np_), new), (np_, new))
        level = nxt
        out.extend(MultiGraph.from_edges(pairs, range(p)) for p, pairs in level.values())
    return out


@pytest.fixture
def rng():
    return random.Random(20261018)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda x: int(x.split()[1])):
            terminalreporter.write_line(line)
