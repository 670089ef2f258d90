"""The Yamada polynomial ``H(G)`` of an abstract multigraph.

Two independent routes are provided: :func:`h_definition` sums over all edge
subsets, :func:`h_delcon` runs the deletion/contraction recursion with the
loop, isthmus, disjoint-union and one-point-union shortcuts.  Closed forms for
trees, cycles, bouquets and theta graphs live in :func:`h_closed`.
"""

from __future__ import annotations

from typing import Callable, Optional

from .graph import MultiGraph, canonical_key
from .ring import ONE, ZERO, InexactDivisionError, LaurentPoly, sigma

__all__ = [
    "SizeGuardError",
    "h_definition",
    "h_delcon",
    "h_closed",
    "h_two_vertex_join",
    "h_poly",
    "clear_memo",
]

SIGMA = sigma()
NEG_SIGMA = -SIGMA
# y = -(A + 2 + A^-1) is the value substituted for the Betti-number variable
Y_SUB = -(SIGMA + 1)

DEFAULT_MAX_SUBSET_EDGES = 24


class SizeGuardError(ValueError):
    """Input exceeds a configured brute-force size limit."""


# -- subset-sum definition ---------------------------------------------------------


def h_definition(g: MultiGraph, max_edges: int = DEFAULT_MAX_SUBSET_EDGES) -> LaurentPoly:
    """Sum ``(-1)^mu(G-F) * y^beta(G-F)`` over every edge subset ``F``."""
    q = g.q
    if q > max_edges:
        raise SizeGuardError(f"{q} edges exceeds subset-sum limit {max_edges}")
    verts = sorted(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    pairs = [(index[a], index[b]) for a, b, _ in g.edges.values()]
    p = len(verts)
    counts: dict[tuple[int, int], int] = {}
    for mask in range(1 << q):
        parent = list(range(p))
        kept = 0
        mu = p
        for i, (a, b) in enumerate(pairs):
            if mask >> i & 1:
                continue  # edge i is in F, i.e. deleted
            kept += 1
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a != b:
                parent[max(a, b)] = min(a, b)
                mu -= 1
        beta = kept - p + mu
        counts[(mu, beta)] = counts.get((mu, beta), 0) + 1
    total = ZERO
    powers: dict[int, LaurentPoly] = {}
    for (mu, beta), n in sorted(counts.items()):
        if beta not in powers:
            powers[beta] = Y_SUB ** beta
        total = total + powers[beta] * (n if mu % 2 == 0 else -n)
    return total


# -- deletion / contraction ------------------------------------------------------

_MEMO: dict = {}


def clear_memo() -> None:
    _MEMO.clear()


def h_delcon(g: MultiGraph, choose_edge: Optional[Callable[[MultiGraph], int]] = None) -> LaurentPoly:
    """Deletion/contraction evaluation of ``H(g)``.

    With ``choose_edge`` given, the plain recursion is run on the graph object
    itself, pivoting on whatever edge the callback returns; this path uses only
    the edgeless, loop, isthmus and non-loop rules and is meant for checking
    that the result does not depend on the pivot order.
    """
    if choose_edge is not None:
        return _h_pivot(g, choose_edge)
    pairs = [(a, b) for a, b, _ in g.edges.values()]
    return _h(set(g.vertices), pairs)


def _h_pivot(g: MultiGraph, choose: Callable[[MultiGraph], int]) -> LaurentPoly:
    if not g.edges:
        return LaurentPoly.const(-1 if g.p % 2 else 1)
    e = choose(g)
    kind = g.classify_edge(e)
    if kind == "loop":
        return NEG_SIGMA * _h_pivot(g.delete_edge(e), choose)
    if kind == "isthmus":
        return ZERO
    return _h_pivot(g.contract_edge(e), choose) + _h_pivot(g.delete_edge(e), choose)


def _h(vs: set[int], pairs: list[tuple[int, int]]) -> LaurentPoly:
    sign = 1
    sigma_pow = 0
    while True:
        nonloops = [(a, b) for a, b in pairs if a != b]
        loops = len(pairs) - len(nonloops)
        if loops:
            # each loop contributes a factor -sigma
            sigma_pow += loops
            if loops % 2:
                sign = -sign
            pairs = nonloops
        deg = {v: 0 for v in vs}
        for a, b in pairs:
            deg[a] += 1
            deg[b] += 1
        isolated = [v for v, d in deg.items() if d == 0]
        if isolated:
            if len(isolated) % 2:
                sign = -sign
            vs = vs - set(isolated)
        if not vs:
            return _scaled(ONE, sign, sigma_pow)
        if any(d == 1 for d in deg.values()):
            return ZERO
        # series edge: contracting an edge at a degree-2 vertex leaves H unchanged,
        # the deletion branch has an isthmus
        w = next((v for v, d in deg.items() if d == 2), None)
        if w is None:
            break
        i = next(i for i, (a, b) in enumerate(pairs) if a == w or b == w)
        a, b = pairs[i]
        other = b if a == w else a
        pairs = [(other if x == w else x, other if y == w else y) for j, (x, y) in enumerate(pairs) if j != i]
        vs = vs - {w}

    blocks = _blocks(vs, pairs)
    if blocks is None:
        return ZERO
    if len(blocks) > 1:
        # disjoint unions multiply; one-point unions multiply with a sign flip.
        comps = _component_count(vs, pairs)
        result = _scaled(ONE, sign, sigma_pow)
        for bpairs in blocks:
            bvs = {x for e in bpairs for x in e}
            result = result * _h_block(bvs, bpairs)
        cut_joins = len(blocks) - comps
        return -result if cut_joins % 2 else result
    return _scaled(_h_block(vs, pairs), sign, sigma_pow)


def _scaled(p: LaurentPoly, sign: int, sigma_pow: int) -> LaurentPoly:
    if sigma_pow:
        p = p * SIGMA ** sigma_pow
    return -p if sign < 0 else p


def _h_block(vs: set[int], pairs: list[tuple[int, int]]) -> LaurentPoly:
    """``H`` of a loopless 2-connected multigraph with minimum degree >= 3."""
    if len(vs) == 2:
        # theta graph with len(pairs) parallel edges
        return h_closed("theta", len(pairs))
    key = canonical_key(vs, pairs)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    # pivot on an edge of the largest parallel class
    mult: dict[tuple[int, int], int] = {}
    for a, b in pairs:
        k = (min(a, b), max(a, b))
        mult[k] = mult.get(k, 0) + 1
    (u, v), _ = max(mult.items(), key=lambda kv: (kv[1], -kv[0][0], -kv[0][1]))
    i = next(i for i, (a, b) in enumerate(pairs) if (min(a, b), max(a, b)) == (u, v))
    rest = pairs[:i] + pairs[i + 1:]
    keep, drop = min(u, v), max(u, v)
    contracted = [(keep if a == drop else a, keep if b == drop else b) for a, b in rest]
    value = _h(vs - {drop}, contracted) + _h(set(vs), rest)
    _MEMO[key] = value
    return value


def _component_count(vs: set[int], pairs: list[tuple[int, int]]) -> int:
    parent = {v: v for v in vs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    n = len(vs)
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            n -= 1
    return n


def _blocks(vs: set[int], pairs: list[tuple[int, int]]) -> Optional[list[list[tuple[int, int]]]]:
    """Edge sets of the biconnected blocks of a loopless multigraph.

    Returns ``None`` when some block is a single non-parallel edge (an isthmus).
    """
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in vs}
    for i, (a, b) in enumerate(pairs):
        adj[a].append((b, i))
        adj[b].append((a, i))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    stack: list[int] = []
    blocks: list[list[tuple[int, int]]] = []
    counter = 0

    for root in sorted(vs):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        # iterative DFS: frames of (vertex, edge used to enter, neighbour iterator)
        frames = [(root, -1, iter(adj[root]))]
        while frames:
            v, via, it = frames[-1]
            advanced = False
            for w, ei in it:
                if ei == via:
                    continue
                if w not in disc:
                    stack.append(ei)
                    disc[w] = low[w] = counter
                    counter += 1
                    frames.append((w, ei, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    stack.append(ei)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            frames.pop()
            if frames:
                parent = frames[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    block = []
                    while True:
                        ei = stack.pop()
                        block.append(ei)
                        if ei == via:
                            break
                    if len(block) == 1:
                        return None
                    blocks.append([pairs[j] for j in sorted(block)])
    return blocks


# -- closed forms -----------------------------------------------------------------


def h_closed(kind: str, k: int) -> LaurentPoly:
    if k < 1:
        raise ValueError("size must be positive")
    if kind == "tree":
        return ZERO
    if kind == "cycle":
        return SIGMA
    if kind == "bouquet":
        p = SIGMA ** k
        return p if k % 2 else -p
    if kind == "theta":
        num = SIGMA + NEG_SIGMA ** k
        q, r = num.divmod_exact(SIGMA + 1)
        if r:
            raise InexactDivisionError(f"theta closed form not exact at s={k}")
        return q
    raise ValueError(f"no closed form for {kind!r}")


def h_two_vertex_join(h_g1: LaurentPoly, h_k1: LaurentPoly, h_g2: LaurentPoly, h_k2: LaurentPoly) -> LaurentPoly:
    """``H(G1:G2)`` from ``H`` of both parts and of their closures ``K1, K2``."""
    num = h_k1 * h_k2 + (SIGMA + 1) * h_g1 * h_g2 + h_k1 * h_g2 + h_k2 * h_g1
    return num.exact_div(SIGMA)


def h_poly(g: MultiGraph, method: str = "delcon", max_edges: int = DEFAULT_MAX_SUBSET_EDGES) -> LaurentPoly:
    if method == "delcon":
        return h_delcon(g)
    if method == "definition":
        return h_definition(g, max_edges=max_edges)
    if method == "closed":
        kind = recognise_family(g)
        if kind is None:
            raise ValueError("graph is not a tree, cycle, bouquet or theta graph")
        return h_closed(*kind)
    raise ValueError(f"unknown method {method!r}")


def recognise_family(g: MultiGraph) -> Optional[tuple[str, int]]:
    """Identify ``g`` as T_q, C_n, B_q or Theta_s when it is one of them."""
    if not g.is_connected() or g.q == 0:
        return None
    p, q = g.p, g.q
    degs = sorted(g.degree(v) for v in g.vertices)
    loops = sum(1 for e in g.edges if g.is_loop(e))
    if q == p - 1:
        return ("tree", q)
    if p == 1:
        return ("cycle", 1) if q == 1 else ("bouquet", q)
    if loops == 0 and p == 2:
        return ("theta", q) if q != 2 else ("cycle", 2)
    if loops == 0 and q == p and all(d == 2 for d in degs):
        return ("cycle", p)
    return None
