"""Abstract multigraphs with loops, stable edge ids and optional labels."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal

__all__ = [
    "MultiGraph",
    "GraphError",
    "parse_graph",
    "serialize_graph",
    "family",
    "two_vertex_union",
    "substitute_edges",
    "canonical_key",
]


class GraphError(ValueError):
    pass


Edge = tuple[int, int, "str | None"]


@dataclass(frozen=True)
class MultiGraph:
    """Vertex set plus edge map ``id -> (u, v, label)``.

    ``names`` maps vertex ids to the tokens used in a graph file; it is
    carried along for display and ignored by equality.
    """

    vertices: frozenset[int]
    edges: dict[int, Edge] = field(default_factory=dict)
    names: dict[int, str] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        for eid, (u, v, _) in self.edges.items():
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"edge {eid} has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "MultiGraph":
        edges = {i: (u, v, None) for i, (u, v) in enumerate(pairs)}
        vs = set(vertices)
        for u, v, _ in edges.values():
            vs.update((u, v))
        return cls(frozenset(vs), edges)

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(sorted(self.edges.items(), key=lambda kv: kv[0]))))

    # -- counts --------------------------------------------------------------

    @property
    def p(self) -> int:
        return len(self.vertices)

    @property
    def q(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        d = 0
        for a, b, _ in self.edges.values():
            d += (a == v) + (b == v)
        return d

    def label(self, eid: int) -> str:
        lab = self.edges[eid][2]
        return lab if lab is not None else str(eid)

    def is_loop(self, eid: int) -> bool:
        u, v, _ = self.edges[eid]
        return u == v

    def components(self) -> list[set[int]]:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v, _ in self.edges.values():
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        groups: dict[int, set[int]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), set()).add(v)
        return [groups[k] for k in sorted(groups)]

    def mu_beta(self) -> tuple[int, int]:
        mu = len(self.components())
        return mu, self.q - self.p + mu

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- edge operations -----------------------------------------------------

    def _check_edge(self, e: int) -> Edge:
        try:
            return self.edges[e]
        except KeyError:
            raise GraphError(f"unknown edge {e!r}") from None

    def delete_edge(self, e: int) -> "MultiGraph":
        self._check_edge(e)
        edges = {k: val for k, val in self.edges.items() if k != e}
        return MultiGraph(self.vertices, edges, self.names)

    def contract_edge(self, e: int) -> "MultiGraph":
        u, v, _ = self._check_edge(e)
        if u == v:
            raise GraphError(f"cannot contract loop {e!r}")
        g = self.delete_edge(e)
        return g._merge(u, v)

    def identify_vertices(self, u: int, v: int) -> "MultiGraph":
        for x in (u, v):
            if x not in self.vertices:
                raise GraphError(f"unknown vertex {x!r}")
        if u == v:
            raise GraphError("cannot identify a vertex with itself")
        return self._merge(u, v)

    def _merge(self, u: int, v: int) -> "MultiGraph":
        keep, drop = min(u, v), max(u, v)
        edges = {}
        for k, (a, b, lab) in self.edges.items():
            edges[k] = (keep if a == drop else a, keep if b == drop else b, lab)
        names = {k: n for k, n in self.names.items() if k != drop}
        return MultiGraph(self.vertices - {drop}, edges, names)

    def classify_edge(self, e: int) -> Literal["loop", "isthmus", "ordinary"]:
        u, v, _ = self._check_edge(e)
        if u == v:
            return "loop"
        if len(self.delete_edge(e).components()) > len(self.components()):
            return "isthmus"
        return "ordinary"

    def subgraph_without(self, removed: Iterable[int]) -> "MultiGraph":
        gone = set(removed)
        return MultiGraph(self.vertices, {k: v for k, v in self.edges.items() if k not in gone}, self.names)

    def relabel(self, mapping: dict[int, int]) -> "MultiGraph":
        edges = {k: (mapping[a], mapping[b], lab) for k, (a, b, lab) in self.edges.items()}
        names = {mapping[k]: n for k, n in self.names.items() if k in mapping}
        return MultiGraph(frozenset(mapping[v] for v in self.vertices), edges, names)

    def disjoint_union(self, other: "MultiGraph") -> "MultiGraph":
        off_v = max(self.vertices, default=-1) + 1
        off_e = max(self.edges, default=-1) + 1
        other = other.relabel({v: v + off_v for v in other.vertices})
        edges = dict(self.edges)
        for k, val in other.edges.items():
            edges[k + off_e] = val
        return MultiGraph(self.vertices | other.vertices, edges, {**self.names, **other.names})

    def edge_multiset(self) -> list[tuple[int, int]]:
        return sorted((min(a, b), max(a, b)) for a, b, _ in self.edges.values())

    def vertex_name(self, v: int) -> str:
        return self.names.get(v, str(v))

    def vertex_by_name(self, name: str) -> int:
        for k, n in self.names.items():
            if n == name:
                return k
        try:
            v = int(name)
        except ValueError:
            raise GraphError(f"unknown vertex {name!r}") from None
        if v not in self.vertices:
            raise GraphError(f"unknown vertex {name!r}")
        return v

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.edges))


# -- constructors -------------------------------------------------------------


def family(kind: str, k: int) -> MultiGraph:
    """Standard small graphs.

    ``tree`` and ``path`` are paths with ``k`` edges, ``cycle`` is ``C_k``,
    ``bouquet`` is one vertex with ``k`` loops, ``theta`` is two vertices
    joined by ``k`` parallel edges.
    """
    if k < 1:
        raise GraphError("family size must be positive")
    if kind in ("tree", "path"):
        return MultiGraph.from_edges([(i, i + 1) for i in range(k)])
    if kind == "cycle":
        return MultiGraph.from_edges([(i, (i + 1) % k) for i in range(k)])
    if kind == "bouquet":
        return MultiGraph.from_edges([(0, 0)] * k)
    if kind == "theta":
        return MultiGraph.from_edges([(0, 1)] * k)
    raise GraphError(f"unknown family {kind!r}")


def two_vertex_union(
    g1: MultiGraph, terminals1: tuple[int, int], g2: MultiGraph, terminals2: tuple[int, int]
) -> MultiGraph:
    """Glue ``g1`` and ``g2`` along two vertices: ``u1~u2`` and ``v1~v2``."""
    off_v = max(g1.vertices, default=-1) + 1
    mapping = {v: v + off_v for v in g2.vertices}
    mapping[terminals2[0]] = terminals1[0]
    mapping[terminals2[1]] = terminals1[1]
    off_e = max(g1.edges, default=-1) + 1
    edges = dict(g1.edges)
    for k, (a, b, lab) in g2.edges.items():
        edges[k + off_e] = (mapping[a], mapping[b], lab)
    return MultiGraph(g1.vertices | frozenset(mapping.values()), edges)


def substitute_edges(
    g: MultiGraph, parts: dict[str, tuple[MultiGraph, int, int]]
) -> MultiGraph:
    """Replace every edge ``a = uv`` of ``g`` by a copy of ``K_a``.

    ``parts`` maps an edge label to ``(K, u_K, v_K)``; the terminal ``u_K``
    is glued to the edge's first endpoint and ``v_K`` to its second.  A loop
    glues both terminals to the same vertex.
    """
    vertices = set(g.vertices)
    edges: dict[int, Edge] = {}
    next_v = max(g.vertices, default=-1) + 1
    next_e = 0
    for eid in sorted(g.edges):
        a, b, _ = g.edges[eid]
        lab = g.label(eid)
        if lab not in parts:
            raise GraphError(f"no replacement for edge label {lab!r}")
        k, ku, kv = parts[lab]
        mapping = {}
        for x in sorted(k.vertices):
            if x == ku:
                mapping[x] = a
            elif x == kv:
                mapping[x] = b
            else:
                mapping[x] = next_v
                next_v += 1
        vertices.update(mapping.values())
        for kid in sorted(k.edges):
            x, y, _ = k.edges[kid]
            edges[next_e] = (mapping[x], mapping[y], None)
            next_e += 1
    return MultiGraph(frozenset(vertices), edges)


# -- canonical form -------------------------------------------------------------

_CANON_MAX_VERTICES = 8
_CANON_MAX_PERMS = 5040


def canonical_key(vertices: Iterable[int], pairs: Iterable[tuple[int, int]]):
    """Exact memo key for an unlabelled multigraph.

    For at most 8 vertices this is the lexicographically least sorted edge
    list over all relabelings that order vertices by a colour-refinement
    invariant, which makes isomorphic graphs collide.  When that search would
    exceed ``_CANON_MAX_PERMS`` relabelings, or the graph is larger, the key
    falls back to the graph relabeled in sorted vertex order: still exact,
    only without isomorphism sharing.
    """
    vs = sorted(vertices)
    pairs = [(min(a, b), max(a, b)) for a, b in pairs]
    n = len(vs)
    if n > _CANON_MAX_VERTICES:
        idx = {v: i for i, v in enumerate(vs)}
        return (n, tuple(sorted((idx[a], idx[b]) for a, b in pairs)))
    colour = _refine(vs, pairs)
    cells: dict[tuple, list[int]] = {}
    for v in vs:
        cells.setdefault(colour[v], []).append(v)
    ordered = [cells[c] for c in sorted(cells)]
    count = 1
    for cell in ordered:
        for i in range(2, len(cell) + 1):
            count *= i
    if count > _CANON_MAX_PERMS:
        idx = {v: i for i, v in enumerate(vs)}
        return (n, tuple(sorted((idx[a], idx[b]) for a, b in pairs)), "raw")
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in ordered)):
        idx = {}
        i = 0
        for cell in choice:
            for v in cell:
                idx[v] = i
                i += 1
        key = tuple(sorted((min(idx[a], idx[b]), max(idx[a], idx[b])) for a, b in pairs))
        if best is None or key < best:
            best = key
    return (n, best, tuple(sorted(cells)))


def _refine(vs: list[int], pairs: list[tuple[int, int]]) -> dict[int, tuple]:
    adj: dict[int, list[int]] = {v: [] for v in vs}
    loops = {v: 0 for v in vs}
    for a, b in pairs:
        if a == b:
            loops[a] += 1
        else:
            adj[a].append(b)
            adj[b].append(a)
    colour = {v: (len(adj[v]), loops[v]) for v in vs}
    for _ in range(len(vs)):
        new = {v: (colour[v], tuple(sorted(colour[w] for w in adj[v]))) for v in vs}
        # compress to keep keys small
        table = {c: i for i, c in enumerate(sorted(set(new.values())))}
        new = {v: (table[new[v]],) for v in vs}
        if len(set(new.values())) == len(set(colour.values())):
            colour = new
            break
        colour = new
    return colour


# -- text format ------------------------------------------------------------------


def parse_graph(text: str) -> MultiGraph:
    """Parse ``vertices: a b c`` followed by ``edge <id>: <u> <v> [label]`` lines."""
    names: dict[str, int] = {}
    edges: dict[int, Edge] = {}
    seen_vertices = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            if seen_vertices:
                raise GraphError(f"line {lineno}: duplicate vertices line")
            seen_vertices = True
            for tok in line[len("vertices:"):].split():
                if tok in names:
                    raise GraphError(f"line {lineno}: duplicate vertex {tok!r}")
                names[tok] = len(names)
            continue
        if line.startswith("edge"):
            head, sep, rest = line.partition(":")
            parts = head.split()
            if not sep or len(parts) != 2 or parts[0] != "edge":
                raise GraphError(f"line {lineno}: expected 'edge <id>: <u> <v> [label]'")
            try:
                eid = int(parts[1])
            except ValueError:
                raise GraphError(f"line {lineno}: edge id must be an integer") from None
            toks = rest.split()
            if len(toks) not in (2, 3):
                raise GraphError(f"line {lineno}: expected 'edge <id>: <u> <v> [label]'")
            if eid in edges:
                raise GraphError(f"line {lineno}: duplicate edge id {eid}")
            for t in toks[:2]:
                if t not in names:
                    raise GraphError(f"line {lineno}: unknown vertex {t!r}")
            edges[eid] = (names[toks[0]], names[toks[1]], toks[2] if len(toks) == 3 else None)
            continue
        raise GraphError(f"line {lineno}: unrecognised line {line!r}")
    if not seen_vertices:
        raise GraphError("missing 'vertices:' line")
    return MultiGraph(frozenset(names.values()), edges, {i: n for n, i in names.items()})


def serialize_graph(g: MultiGraph) -> str:
    vs = sorted(g.vertices)
    lines = ["vertices: " + " ".join(g.vertex_name(v) for v in vs)]
    for eid in sorted(g.edges):
        a, b, lab = g.edges[eid]
        tail = f" {lab}" if lab is not None else ""
        lines.append(f"edge {eid}: {g.vertex_name(a)} {g.vertex_name(b)}{tail}")
    return "\n".join(lines) + "\n"
