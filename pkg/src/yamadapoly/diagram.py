"""Combinatorial spatial-graph diagrams.

A diagram is a set of nodes joined by arcs.  A node is either a graph vertex
with ``k`` ports, or a crossing with ports ``0..3`` in counterclockwise order;
the strand through ports ``(0, 2)`` passes over the strand through ``(1, 3)``.

Spins at a crossing:

* ``plus``  joins ports ``(0, 1)`` and ``(2, 3)``
* ``minus`` joins ports ``(0, 3)`` and ``(1, 2)``
* ``zero``  turns the crossing into a degree-4 graph vertex

This assignment of the two smoothings to the spins is the one for which the
one-crossing diagram ``infinity_plus()`` has ``R = A^-2 (A + 1 + A^-1)``.
Swapping them amounts to the global substitution ``A -> 1/A``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Literal, Mapping, Optional

from .graph import MultiGraph
from .ring import LaurentPoly

__all__ = [
    "Node",
    "SpatialDiagram",
    "DiagramError",
    "resolve",
    "mirror_diagram",
    "close_terminals",
    "parse_diagram",
    "serialize_diagram",
    "disjoint_union",
    "merge_vertices",
    "two_vertex_union",
    "one_point_union",
    "infinity_plus",
    "infinity_minus",
    "edge_diagram",
    "circle_diagram",
    "kink_diagram",
    "SPINS",
]

Spin = Literal["plus", "minus", "zero"]
SPINS: tuple[Spin, ...] = ("plus", "minus", "zero")

_SMOOTH = {
    "plus": {0: 1, 1: 0, 2: 3, 3: 2},
    "minus": {0: 3, 3: 0, 1: 2, 2: 1},
}
_STRAIGHT = {0: 2, 2: 0, 1: 3, 3: 1}


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    kind: Literal["vertex", "crossing"]
    degree: int

    def __post_init__(self):
        if self.kind == "crossing" and self.degree != 4:
            raise DiagramError("crossings have exactly 4 ports")
        if self.kind == "vertex" and self.degree < 0:
            raise DiagramError("vertex degree must be non-negative")


Port = tuple[str, int]


def _natural(s: str):
    return (0, int(s), "") if s.isdigit() else (1, 0, s)


class SpatialDiagram:
    """Nodes, arcs ``id -> (node, port, node, port)`` and optional terminals."""

    __slots__ = ("nodes", "arcs", "terminals", "_ports")

    def __init__(
        self,
        nodes: Mapping[str, Node],
        arcs: Mapping[str, tuple[str, int, str, int]],
        terminals: Optional[tuple[str, str]] = None,
    ):
        self.nodes = dict(nodes)
        self.arcs = dict(arcs)
        self.terminals = tuple(terminals) if terminals is not None else None
        self._ports: dict[Port, tuple[str, Port]] = {}
        for aid, (n1, p1, n2, p2) in self.arcs.items():
            for (n, p), other in (((n1, p1), (n2, p2)), ((n2, p2), (n1, p1))):
                if n not in self.nodes:
                    raise DiagramError(f"arc {aid} references unknown node {n!r}")
                if not 0 <= p < self.nodes[n].degree:
                    raise DiagramError(f"arc {aid} references missing port {n}.{p}")
                if (n, p) in self._ports:
                    raise DiagramError(f"port {n}.{p} is used by more than one arc end")
                self._ports[(n, p)] = (aid, other)
        for nid, node in self.nodes.items():
            for p in range(node.degree):
                if (nid, p) not in self._ports:
                    raise DiagramError(f"port {nid}.{p} is not met by any arc")
        if self.terminals is not None:
            if len(self.terminals) != 2:
                raise DiagramError("terminals must be a pair of vertex ids")
            for t in self.terminals:
                if t not in self.nodes or self.nodes[t].kind != "vertex":
                    raise DiagramError(f"terminal {t!r} is not a vertex node")
            if self.terminals[0] == self.terminals[1]:
                raise DiagramError("terminals must be distinct")

    @property
    def crossings(self) -> list[str]:
        return sorted((n for n, node in self.nodes.items() if node.kind == "crossing"), key=_natural)

    @property
    def vertices(self) -> list[str]:
        return sorted((n for n, node in self.nodes.items() if node.kind == "vertex"), key=_natural)

    def arc_at(self, node: str, port: int) -> tuple[str, Port]:
        return self._ports[(node, port)]

    def with_terminals(self, terminals: Optional[tuple[str, str]]) -> "SpatialDiagram":
        return SpatialDiagram(self.nodes, self.arcs, terminals)

    def _canonical(self):
        rot = {}
        for c in self.crossings:
            ids = [self._ports[(c, p)][0] for p in range(4)]
            rot[c] = 2 if ids[2:] + ids[:2] < ids else 0

        def port(n, p):
            if n in rot:
                return (n, (p - rot[n]) % 4)
            return (n, p)

        arcs = {aid: frozenset((port(n1, p1), port(n2, p2))) for aid, (n1, p1, n2, p2) in self.arcs.items()}
        return self.nodes, arcs, self.terminals

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpatialDiagram):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __repr__(self) -> str:
        return (
            f"SpatialDiagram({len(self.vertices)} vertices, {len(self.crossings)} crossings, "
            f"{len(self.arcs)} arcs, terminals={self.terminals})"
        )


# -- resolution ---------------------------------------------------------------------


def resolve(
    d: SpatialDiagram, state: Mapping[str, Spin], flipped: bool = False
) -> tuple[MultiGraph, LaurentPoly]:
    """Plane graph and weight ``A^(#plus - #minus)`` of one spin state.

    Closed curves that meet no graph vertex become a fresh vertex carrying one
    loop.  ``flipped`` exchanges the two smoothings (test hook).
    """
    for c in d.crossings:
        if c not in state:
            raise DiagramError(f"crossing {c!r} has no spin")
    graph_nodes = [n for n in sorted(d.nodes, key=_natural)
                   if d.nodes[n].kind == "vertex" or state[n] == "zero"]
    gid = {n: i for i, n in enumerate(graph_nodes)}
    plus = minus = 0
    through: dict[str, dict[int, int]] = {}
    for c in d.crossings:
        s = state[c]
        if s == "zero":
            continue
        if s == "plus":
            plus += 1
        elif s == "minus":
            minus += 1
        else:
            raise DiagramError(f"unknown spin {s!r}")
        if flipped:
            s = "minus" if s == "plus" else "plus"
        through[c] = _SMOOTH[s]
    edges, visited, next_v = _trace(d, gid, through, len(graph_nodes))
    g = MultiGraph(frozenset(range(next_v)), edges)
    return g, LaurentPoly.monomial(plus - minus)


def _trace(d: SpatialDiagram, gid: dict[str, int], through: dict[str, dict[int, int]], next_v: int):
    edges: dict[int, tuple[int, int, None]] = {}
    visited: set[str] = set()
    for n in gid:
        for p in range(d.nodes[n].degree):
            aid, end = d.arc_at(n, p)
            if aid in visited:
                continue
            visited.add(aid)
            while end[0] in through:
                aid, end = d.arc_at(end[0], through[end[0]][end[1]])
                visited.add(aid)
            edges[len(edges)] = (gid[n], gid[end[0]], None)
    for aid in d.arcs:
        if aid in visited:
            continue
        # closed curve through pass-through crossings only
        n1, p1, _, _ = d.arcs[aid]
        start = (n1, p1)
        cur = start
        while True:
            a, end = d.arc_at(*cur)
            visited.add(a)
            cur = (end[0], through[end[0]][end[1]])
            if cur == start:
                break
        edges[len(edges)] = (next_v, next_v, None)
        next_v += 1
    return edges, visited, next_v


def underlying_graph(d: SpatialDiagram) -> MultiGraph:
    """Abstract graph of the diagram: every strand passes straight through its crossing."""
    gid = {n: i for i, n in enumerate(d.vertices)}
    edges, _, next_v = _trace(d, gid, {c: _STRAIGHT for c in d.crossings}, len(gid))
    return MultiGraph(frozenset(range(next_v)), edges)


# -- transformations ------------------------------------------------------------------


def mirror_diagram(d: SpatialDiagram) -> SpatialDiagram:
    """Swap over and under at every crossing by rotating its port labels one step."""
    crossings = set(d.crossings)

    def port(n, p):
        return (p - 1) % 4 if n in crossings else p

    arcs = {aid: (n1, port(n1, p1), n2, port(n2, p2)) for aid, (n1, p1, n2, p2) in d.arcs.items()}
    return SpatialDiagram(d.nodes, arcs, d.terminals)


def merge_vertices(d: SpatialDiagram, ids: Iterable[str], new_id: Optional[str] = None) -> SpatialDiagram:
    """Merge several vertex nodes into one whose ports are theirs, concatenated."""
    ids = list(ids)
    if len(set(ids)) != len(ids):
        raise DiagramError("cannot merge a vertex with itself")
    for i in ids:
        if i not in d.nodes or d.nodes[i].kind != "vertex":
            raise DiagramError(f"{i!r} is not a vertex node")
    new_id = new_id or ids[0]
    if new_id in d.nodes and new_id not in ids:
        raise DiagramError(f"node id {new_id!r} already in use")
    offset = {}
    total = 0
    for i in ids:
        offset[i] = total
        total += d.nodes[i].degree
    nodes = {}
    for n, node in d.nodes.items():
        if n in offset:
            if n == ids[0]:
                nodes[new_id] = Node("vertex", total)
            continue
        nodes[n] = node

    def port(n, p):
        return (new_id, offset[n] + p) if n in offset else (n, p)

    arcs = {aid: (*port(n1, p1), *port(n2, p2)) for aid, (n1, p1, n2, p2) in d.arcs.items()}
    terminals = None
    if d.terminals is not None:
        t = tuple(new_id if x in offset else x for x in d.terminals)
        terminals = t if t[0] != t[1] else None
    return SpatialDiagram(nodes, arcs, terminals)


def close_terminals(d: SpatialDiagram) -> SpatialDiagram:
    """Identify the two terminal vertices; no crossing is added."""
    if d.terminals is None:
        raise DiagramError("diagram has no terminals to close")
    return merge_vertices(d, d.terminals)


def _prefixed(d: SpatialDiagram, prefix: str) -> SpatialDiagram:
    nodes = {prefix + n: node for n, node in d.nodes.items()}
    arcs = {prefix + a: (prefix + n1, p1, prefix + n2, p2) for a, (n1, p1, n2, p2) in d.arcs.items()}
    terms = tuple(prefix + t for t in d.terminals) if d.terminals else None
    return SpatialDiagram(nodes, arcs, terms)


def disjoint_union(d1: SpatialDiagram, d2: SpatialDiagram, prefixes=("a", "b")) -> SpatialDiagram:
    """Side-by-side union; node and arc ids are prefixed to keep them apart."""
    x = _prefixed(d1, prefixes[0])
    y = _prefixed(d2, prefixes[1])
    clash = (set(x.nodes) & set(y.nodes)) | (set(x.arcs) & set(y.arcs))
    if clash:
        raise DiagramError(f"id clash after prefixing: {sorted(clash)}")
    return SpatialDiagram({**x.nodes, **y.nodes}, {**x.arcs, **y.arcs}, None)


def one_point_union(d1: SpatialDiagram, v1: str, d2: SpatialDiagram, v2: str) -> SpatialDiagram:
    u = disjoint_union(d1, d2)
    return merge_vertices(u, ["a" + v1, "b" + v2])


def two_vertex_union(d1: SpatialDiagram, d2: SpatialDiagram) -> SpatialDiagram:
    """Glue two diagrams along their terminals (``u1~u2``, ``v1~v2``)."""
    if d1.terminals is None or d2.terminals is None:
        raise DiagramError("both diagrams need terminals")
    u = disjoint_union(d1, d2)
    (u1, v1), (u2, v2) = d1.terminals, d2.terminals
    u = merge_vertices(u, ["a" + u1, "b" + u2], "u")
    u = merge_vertices(u, ["a" + v1, "b" + v2], "v")
    return u.with_terminals(("u", "v"))


# -- standard pieces -------------------------------------------------------------------


def infinity_plus() -> SpatialDiagram:
    """Two degree-2 vertices joined by two edges that cross once."""
    return SpatialDiagram(
        {"u": Node("vertex", 2), "v": Node("vertex", 2), "c": Node("crossing", 4)},
        {
            "a1": ("u", 0, "c", 1),
            "a2": ("u", 1, "c", 2),
            "a3": ("v", 0, "c", 0),
            "a4": ("v", 1, "c", 3),
        },
        ("u", "v"),
    )


def infinity_minus() -> SpatialDiagram:
    return mirror_diagram(infinity_plus())


def edge_diagram() -> SpatialDiagram:
    """A single crossing-free edge between terminals ``u`` and ``v``."""
    return SpatialDiagram(
        {"u": Node("vertex", 1), "v": Node("vertex", 1)}, {"e": ("u", 0, "v", 0)}, ("u", "v")
    )


def circle_diagram() -> SpatialDiagram:
    """Crossing-free circle drawn through one vertex."""
    return SpatialDiagram({"v": Node("vertex", 2)}, {"e": ("v", 0, "v", 1)})


def kink_diagram(positive: bool = True) -> SpatialDiagram:
    """Vertex-free circle with one curl; the positive curl has ``R = A^2 sigma``."""
    arcs = {"a": ("c", 0, "c", 1), "b": ("c", 2, "c", 3)} if positive else {
        "a": ("c", 1, "c", 2), "b": ("c", 3, "c", 0)}
    return SpatialDiagram({"c": Node("crossing", 4)}, arcs)


# -- text format ---------------------------------------------------------------------

_ID = r"[A-Za-z0-9_\-]+"
_VERTEX = re.compile(rf"^vertex\s+({_ID})\s+ports\s+(\d+)$")
_CROSSING = re.compile(rf"^crossing\s+({_ID})$")
_ARC = re.compile(rf"^arc\s+({_ID})\s*:\s*({_ID})\.(\d+)\s+({_ID})\.(\d+)$")
_TERMINALS = re.compile(rf"^terminals\s+({_ID})\s+({_ID})$")


def parse_diagram(text: str) -> SpatialDiagram:
    nodes: dict[str, Node] = {}
    arcs: dict[str, tuple[str, int, str, int]] = {}
    terminals = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _VERTEX.match(line):
            nid = m.group(1)
            if nid in nodes:
                raise DiagramError(f"line {lineno}: duplicate node {nid!r}")
            nodes[nid] = Node("vertex", int(m.group(2)))
        elif m := _CROSSING.match(line):
            nid = m.group(1)
            if nid in nodes:
                raise DiagramError(f"line {lineno}: duplicate node {nid!r}")
            nodes[nid] = Node("crossing", 4)
        elif m := _ARC.match(line):
            aid = m.group(1)
            if aid in arcs:
                raise DiagramError(f"line {lineno}: duplicate arc {aid!r}")
            arcs[aid] = (m.group(2), int(m.group(3)), m.group(4), int(m.group(5)))
        elif m := _TERMINALS.match(line):
            if terminals is not None:
                raise DiagramError(f"line {lineno}: duplicate terminals line")
            terminals = (m.group(1), m.group(2))
        else:
            raise DiagramError(f"line {lineno}: cannot parse {line!r}")
    return SpatialDiagram(nodes, arcs, terminals)


def serialize_diagram(d: SpatialDiagram) -> str:
    lines = []
    for nid, node in d.nodes.items():
        if node.kind == "vertex":
            lines.append(f"vertex {nid} ports {node.degree}")
        else:
            lines.append(f"crossing {nid}")
    for aid, (n1, p1, n2, p2) in d.arcs.items():
        lines.append(f"arc {aid}: {n1}.{p1} {n2}.{p2}")
    if d.terminals is not None:
        lines.append(f"terminals {d.terminals[0]} {d.terminals[1]}")
    return "\n".join(lines) + "\n"
