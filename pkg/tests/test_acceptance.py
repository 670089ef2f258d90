"""End-to-end acceptance checks, one test per criterion.

Each test records a ``PASS``/``FAIL`` line with its wall time; the lines are
printed together at the end of the run (see ``conftest.py``).
"""

import functools
import itertools
import random
import time

import numpy as np

from conftest import connected_multigraphs, random_diagram, random_multigraph
from yamadapoly.chainpoly import chain_definition, chain_recursive, compose_h_via_chain, replacement_data
from yamadapoly.diagram import close_terminals, infinity_plus, kink_diagram, mirror_diagram
from yamadapoly.graph import MultiGraph, family, substitute_edges
from yamadapoly.hpoly import h_closed, h_definition, h_delcon
from yamadapoly.ring import LaurentPoly, eval_complex, sigma
from yamadapoly.yamada import FamilySpec, bead_values, build_replaced_diagram, r_replace, r_state_sum, r_uniform
from yamadapoly.zeros import OMEGA3, family_polynomial, family_roots, region_membership, scan_one

S = sigma()
RESULTS: list[str] = []


def criterion(number, title, limit):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
                elapsed = time.perf_counter() - start
                assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
            except BaseException as exc:
                elapsed = time.perf_counter() - start
                RESULTS.append(f"FAIL {number:2d} {title} ({elapsed:.2f}s): {exc}")
                raise
            extra = f"; {detail}" if detail else ""
            RESULTS.append(f"PASS {number:2d} {title} ({elapsed:.2f}s{extra})")
        return run
    return wrap


def scale_residual(p, z):
    scale = max(abs(c) * abs(z) ** k for k, c in p.terms.items())
    return abs(eval_complex(p, z)) / scale


@criterion(1, "closed-form pins for point, trees, cycles, bouquets, thetas", 1.0)
def test_c01_closed_form_pins():
    assert h_delcon(MultiGraph.from_edges([], [0])) == -1
    for k in range(1, 9):
        tree, cyc, bq, th = (family(kind, k) for kind in ("tree", "cycle", "bouquet", "theta"))
        assert h_delcon(tree) == h_definition(tree) == 0
        assert h_delcon(cyc) == h_definition(cyc) == S
        assert h_delcon(bq) == h_definition(bq) == (-1) ** (k - 1) * S ** k
        theta = (S + (-S) ** k).exact_div(S + 1)
        assert h_delcon(th) == h_definition(th) == theta == h_closed("theta", k)
    assert h_closed("theta", 3) == S * (1 - S)


@criterion(2, "subset sum equals deletion-contraction on 300 random multigraphs", 30.0)
def test_c02_h_oracle():
    rng = random.Random(2)
    for _ in range(300):
        g = random_multigraph(rng, max_vertices=5, max_edges=7)
        assert h_definition(g) == h_delcon(g)


def _small_laurent(rng):
    terms = {rng.randint(-2, 2): rng.randint(-4, 4) for _ in range(rng.randint(1, 3))}
    return LaurentPoly(terms)


@criterion(3, "chain polynomial definitions agree on all graphs up to 6 edges", 60.0)
def test_c03_chain_consistency():
    rng = random.Random(3)
    graphs = connected_multigraphs(6)
    for g in graphs:
        for _ in range(20):
            vals = {g.label(e): _small_laurent(rng) for e in g.edges}
            w = _small_laurent(rng)
            assert chain_definition(g, vals, w) == chain_recursive(g, vals, w)
    return f"{len(graphs)} graphs x 20 assignments"


PARTS = {
    "edge": (family("tree", 1), 0, 1),
    "path2": (family("path", 2), 0, 2),
    "theta2": (family("theta", 2), 0, 1),
    "theta3": (family("theta", 3), 0, 1),
}


@criterion(4, "composition through the chain polynomial matches the explicit graph", 60.0)
def test_c04_composition():
    c2 = MultiGraph.from_edges([(0, 1), (0, 1)])
    t2 = replacement_data(*PARTS["theta2"])
    pinned = compose_h_via_chain(c2, {c2.label(e): t2 for e in c2.edges})
    assert pinned == h_delcon(family("theta", 4)) == S * (S * S - S + 1)
    rng = random.Random(4)
    data = {k: replacement_data(*v) for k, v in PARTS.items()}
    for _ in range(100):
        g = random_multigraph(rng, max_vertices=4, max_edges=5, min_edges=1, connected=True)
        choice = {g.label(e): rng.choice(sorted(PARTS)) for e in g.edges}
        explicit = substitute_edges(g, {lab: PARTS[name] for lab, name in choice.items()})
        assert compose_h_via_chain(g, {lab: data[name] for lab, name in choice.items()}) == h_delcon(explicit)


@criterion(5, "state-sum pins and mirror identity on 50 random diagrams", 60.0)
def test_c05_state_sum():
    assert r_state_sum(infinity_plus()) == S.shift(-2)
    assert r_state_sum(close_terminals(infinity_plus())) == S
    assert r_state_sum(kink_diagram(True)) == S.shift(2)
    rng = random.Random(5)
    for _ in range(50):
        d = random_diagram(rng, rng.randint(0, 6), vertices=rng.randint(1, 3))
        assert r_state_sum(mirror_diagram(d)) == r_state_sum(d).mirror()


@criterion(6, "replacement formulas equal state sums of the built diagrams", 120.0)
def test_c06_replacement():
    checked = 0
    for fam, bead, size in itertools.product(("cycle", "theta", "bouquet"), ("infplus", "infminus", "edge"),
                                             range(1, 5)):
        expected = r_state_sum(build_replaced_diagram(fam, [bead] * size))
        assert r_replace(fam, [bead_values(bead)] * size) == expected
        checked += 1
    rng = random.Random(6)
    for fam in ("cycle", "theta", "bouquet"):
        for _ in range(5):
            beads = [rng.choice(["infplus", "infminus", "edge"]) for _ in range(rng.randint(2, 4))]
            expected = r_state_sum(build_replaced_diagram(fam, beads))
            assert r_replace(fam, [bead_values(b) for b in beads]) == expected
            checked += 1
    a2 = LaurentPoly.monomial(-2)
    for n in range(1, 7):
        assert r_uniform(FamilySpec("cycle", n)) == (-(a2 * S)) ** n + S * (a2 + 1) ** n
        theta = ((-S) ** n + S * ((S + 1) * a2 + 1) ** n).exact_div(S + 1)
        assert r_uniform(FamilySpec("theta", n)) == theta
        assert r_uniform(FamilySpec("bouquet", n)) == (-1) ** (n - 1) * S ** n
    return f"{checked} diagrams"


@criterion(7, "equal-modulus residual shrinks for the s=3 theta family", 300.0)
def test_c07_bkw_approach():
    worst = [scan_one("theta", 3, n)["max_bkw_residual"] for n in (25, 50, 100)]
    assert worst[0] > worst[1] > worst[2], worst
    assert worst[2] <= 0.05, worst
    return "max residual " + " > ".join(f"{w:.4f}" for w in worst)


@criterion(8, "roots of the inf- family are reciprocals of the inf+ roots", 300.0)
def test_c08_mirror_pairing():
    worst = 0.0
    for s in (1, 2, 3):
        for n in range(1, 31):
            plus = np.array(family_roots("inf+", s, n).roots)
            minus = np.array(family_roots("inf-", s, n).roots)
            assert len(plus) == len(minus)
            target = 1 / plus
            used = np.zeros(len(target), dtype=bool)
            for z in minus:
                d = np.abs(target - z)
                d[used] = np.inf
                k = int(np.argmin(d))
                used[k] = True
                worst = max(worst, float(d[k]))
    assert worst < 1e-6, worst
    return f"max pairing error {worst:.1e}"


@criterion(9, "omega is the disjunction of its three sub-regions", 60.0)
def test_c09_region_algebra():
    rng = np.random.default_rng(9)
    pts = rng.uniform(-3, 3, size=(100_000, 2))
    for x, y in pts:
        z = complex(x, y)
        parts = (region_membership("sigma_ge_1", z) or region_membership("plus_region", z)
                 or region_membership("minus_region", z))
        assert region_membership("omega", z) == parts
    assert region_membership("omega", 1)
    z = OMEGA3
    assert abs(z + 1 + 1 / z) < 1e-9
    assert abs(abs(z ** 3 + 2 * z ** 2 + z + 1) - 1) < 1e-9
    assert abs(abs(z ** -3 + 2 * z ** -2 + z ** -1 + 1) - 1) < 1e-9
    assert not region_membership("omega", z)


@criterion(10, "every scanned root re-evaluates below 1e-8 of the coefficient scale", 300.0)
def test_c10_root_residuals():
    worst = 0.0
    count = 0
    jobs = [("theta", s, n) for s in (2, 3, 4) for n in (10, 25, 50)]
    jobs += [(f, s, n) for f in ("inf+", "inf-") for s in (2, 3) for n in (10, 25)]
    for fam, s, n in jobs:
        res = scan_one(fam, s, n)
        p = family_polynomial(fam, s, n)
        for row in res["rows"]:
            worst = max(worst, scale_residual(p, complex(row[3], row[4])))
            count += 1
    assert worst <= 1e-8, worst
    return f"{count} roots, worst {worst:.1e}"

