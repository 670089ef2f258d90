"""Yamada polynomial ``R[g]`` of diagrams and edge-replacement formulas."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence, Union

from .diagram import (
    SPINS,
    DiagramError,
    SpatialDiagram,
    close_terminals,
    disjoint_union,
    edge_diagram,
    infinity_minus,
    infinity_plus,
    merge_vertices,
    resolve,
)
from .hpoly import SizeGuardError, h_delcon, h_two_vertex_join
from .ring import ONE, ZERO, InexactDivisionError, LaurentPoly, RationalFunction, sigma

__all__ = [
    "FamilySpec",
    "r_state_sum",
    "r_two_vertex_join",
    "r_replace",
    "r_uniform",
    "bead_values",
    "build_replaced_diagram",
    "R_INF_PLUS",
    "R_INF_PLUS_CLOSED",
    "DEFAULT_MAX_CROSSINGS",
]

SIGMA = sigma()
DEFAULT_MAX_CROSSINGS = 14

# values for the one-crossing two-vertex bead and its closure
R_INF_PLUS = SIGMA.shift(-2)
R_INF_PLUS_CLOSED = SIGMA

Bead = Union[str, SpatialDiagram]


@dataclass(frozen=True)
class FamilySpec:
    family: str  # cycle | theta | bouquet
    size: int
    bead: Bead = "infplus"

    def __post_init__(self):
        if self.family not in ("cycle", "theta", "bouquet"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.size < 1:
            raise ValueError("family size must be positive")


# -- state sum ----------------------------------------------------------------------


def _state(crossings: list[str], index: int) -> dict[str, str]:
    state = {}
    for c in crossings:
        index, digit = divmod(index, 3)
        state[c] = SPINS[digit]
    return state


def _partial_sum(d: SpatialDiagram, start: int, stop: int, flipped: bool) -> LaurentPoly:
    crossings = d.crossings
    total = ZERO
    for index in range(start, stop):
        g, weight = resolve(d, _state(crossings, index), flipped=flipped)
        h = h_delcon(g)
        if h:
            total = total + weight * h
    return total


def r_state_sum(
    d: SpatialDiagram,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    threads: int = 1,
    flipped: bool = False,
) -> LaurentPoly:
    """Sum of ``A^(m1 - m2) H(S)`` over all ``3^c`` spin states.

    States are indexed by base-3 digits over the crossings in sorted order
    (first crossing = least significant digit; 0 plus, 1 minus, 2 zero).  With
    ``threads > 1`` contiguous index ranges are summed in worker processes;
    exact addition makes the total independent of the split.
    """
    c = len(d.crossings)
    if c > max_crossings:
        raise SizeGuardError(f"{c} crossings exceeds state-sum limit {max_crossings}")
    n = 3 ** c
    if threads <= 1 or n < 3 ** 4:
        return _partial_sum(d, 0, n, flipped)
    step = -(-n // threads)
    bounds = [(i, min(i + step, n)) for i in range(0, n, step)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_partial_sum, [d] * len(bounds), [b[0] for b in bounds],
                              [b[1] for b in bounds], [flipped] * len(bounds)))
    total = ZERO
    for part in parts:
        total = total + part
    return total


def r_two_vertex_join(r_g1: LaurentPoly, r_k1: LaurentPoly, r_g2: LaurentPoly, r_k2: LaurentPoly) -> LaurentPoly:
    """``R[g1:g2]``; same algebra as the graph version, applied to ``R``-values."""
    return h_two_vertex_join(r_g1, r_k1, r_g2, r_k2)


# -- replacement formulas -------------------------------------------------------------


def r_replace(family: str, beads: Sequence[tuple[LaurentPoly, LaurentPoly]]) -> LaurentPoly:
    """``R`` of a cycle, theta or bouquet whose edges carry the given beads.

    ``beads`` lists ``(R[g_i], R[g_i'])`` pairs, ``g_i'`` being the bead with
    its terminals identified.  Intermediate quotients are taken in the fraction
    field; only the assembled value has to be a Laurent polynomial.
    """
    if not beads:
        raise ValueError("need at least one bead")
    s = RationalFunction.from_poly(SIGMA)
    if family == "cycle":
        first = ONE
        second = RationalFunction.from_poly(SIGMA)
        for r, rp in beads:
            first = first * -r
            second = second * (RationalFunction(r + rp) / s)
        value = second + RationalFunction.from_poly(first)
    elif family == "theta":
        closed = ONE
        open_part = RationalFunction.from_poly(SIGMA)
        for r, rp in beads:
            closed = closed * rp
            open_part = open_part * (RationalFunction((SIGMA + 1) * r + rp) / s)
        if len(beads) % 2:
            closed = -closed
        value = (RationalFunction.from_poly(closed) + open_part) / RationalFunction.from_poly(SIGMA + 1)
    elif family == "bouquet":
        closed = ONE
        for _, rp in beads:
            closed = closed * rp
        return closed if len(beads) % 2 else -closed
    else:
        raise ValueError(f"unknown family {family!r}")
    if not value.is_polynomial():
        raise InexactDivisionError(f"{family} formula did not clear to a polynomial")
    return value.to_poly()


def bead_values(bead: Bead, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> tuple[LaurentPoly, LaurentPoly]:
    """``(R[g], R[g'])`` for a bead; the infinity beads use their known values."""
    if bead == "infplus":
        return R_INF_PLUS, R_INF_PLUS_CLOSED
    if bead == "infminus":
        return R_INF_PLUS.mirror(), R_INF_PLUS_CLOSED.mirror()
    if bead == "edge":
        bead = edge_diagram()
    if not isinstance(bead, SpatialDiagram):
        raise ValueError(f"unknown bead {bead!r}")
    if bead.terminals is None:
        raise DiagramError("bead needs two terminals")
    return (r_state_sum(bead, max_crossings=max_crossings),
            r_state_sum(close_terminals(bead), max_crossings=max_crossings))


def r_uniform(spec: FamilySpec) -> LaurentPoly:
    pair = bead_values(spec.bead)
    return r_replace(spec.family, [pair] * spec.size)


def bead_diagram(bead: Bead) -> SpatialDiagram:
    if isinstance(bead, SpatialDiagram):
        return bead
    table = {"infplus": infinity_plus, "infminus": infinity_minus, "edge": edge_diagram}
    try:
        return table[bead]()
    except KeyError:
        raise ValueError(f"unknown bead {bead!r}") from None


def build_replaced_diagram(family: str, beads: Sequence[Bead]) -> SpatialDiagram:
    """Explicit diagram of a cycle, theta or bouquet with one bead per edge.

    Bead ``i`` is copied with ids prefixed ``b<i>_``.  In a cycle bead ``i``
    runs from base vertex ``x<i>`` to ``x<i+1>``; in a theta every bead runs
    from ``x0`` to ``x1``; in a bouquet both terminals land on ``x0``.  The
    result carries no terminals.
    """
    n = len(beads)
    if n < 1:
        raise ValueError("need at least one bead")
    if family not in ("cycle", "theta", "bouquet"):
        raise ValueError(f"unknown family {family!r}")
    copies = [bead_diagram(b) for b in beads]
    for c in copies:
        if c.terminals is None:
            raise DiagramError("every bead needs two terminals")
    d = _prefix_only(copies[0], "b0_")
    for i, c in enumerate(copies[1:], 1):
        d = disjoint_union(d, c, prefixes=("", f"b{i}_"))
    groups: dict[str, list[str]] = {}
    for i, c in enumerate(copies):
        u, v = (f"b{i}_{t}" for t in c.terminals)
        if family == "cycle":
            targets = (f"x{i}", f"x{(i + 1) % n}")
        elif family == "theta":
            targets = ("x0", "x1")
        else:
            targets = ("x0", "x0")
        groups.setdefault(targets[0], []).append(u)
        groups.setdefault(targets[1], []).append(v)
    d = d.with_terminals(None)
    for target in sorted(groups):
        d = merge_vertices(d, groups[target], target)
    return d


def _prefix_only(d: SpatialDiagram, prefix: str) -> SpatialDiagram:
    nodes = {prefix + k: v for k, v in d.nodes.items()}
    arcs = {prefix + a: (prefix + n1, p1, prefix + n2, p2) for a, (n1, p1, n2, p2) in d.arcs.items()}
    return SpatialDiagram(nodes, arcs, tuple(prefix + t for t in d.terminals))
