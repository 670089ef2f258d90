"""Flow polynomial, chain polynomial and the edge-replacement bridge to ``H``.

Chain polynomials are never expanded symbolically.  They are evaluated at
concrete values of a commutative ring: integer Laurent polynomials or their
fraction field.  The two rings are not mixed implicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Union

from .graph import GraphError, MultiGraph, canonical_key
from .hpoly import DEFAULT_MAX_SUBSET_EDGES, SizeGuardError, h_delcon
from .ring import ONE, ZERO, InexactDivisionError, LaurentPoly, RationalFunction, sigma

__all__ = [
    "flow_poly",
    "eval_in_ring",
    "chain_recursive",
    "chain_definition",
    "ReplacementData",
    "replacement_data",
    "compose_h_via_chain",
    "BetaZeroError",
    "MissingLabelError",
]

SIGMA = sigma()
Q = LaurentPoly.monomial(1)  # the flow-polynomial variable, printed as q

RingValue = Union[LaurentPoly, RationalFunction]


class MissingLabelError(KeyError):
    pass


class BetaZeroError(ZeroDivisionError):
    """``beta(K) = 0`` so the label value ``gamma = 1 - alpha/beta`` is undefined."""


# -- flow polynomial ------------------------------------------------------------------

_FLOW_MEMO: dict = {}
# exact edge list -> value, in front of the isomorphism-level memo
_FLOW_RAW: dict = {}


def flow_poly(g: MultiGraph) -> LaurentPoly:
    """Flow polynomial in ``q``, as a Laurent polynomial with exponents >= 0."""
    return _flow(g.vertices, [(a, b) for a, b, _ in g.edges.values()])


def _flow(vs, pairs: list[tuple[int, int]]) -> LaurentPoly:
    loops = sum(1 for a, b in pairs if a == b)
    pairs = [(a, b) for a, b in pairs if a != b]
    factor = (Q - 1) ** loops if loops else ONE
    if not pairs:
        return factor
    raw = tuple(sorted((a, b) if a < b else (b, a) for a, b in pairs))
    hit = _FLOW_RAW.get(raw)
    if hit is None:
        # isolated vertices do not change F, so only the touched ones are keyed
        used = {x for e in pairs for x in e}
        key = canonical_key(used, pairs)
        hit = _FLOW_MEMO.get(key)
        if hit is None:
            hit = _flow_loopless(used, pairs)
            _FLOW_MEMO[key] = hit
        _FLOW_RAW[raw] = hit
    return factor * hit


def _flow_loopless(vs: set[int], pairs: list[tuple[int, int]]) -> LaurentPoly:
    a, b = pairs[0]
    rest = pairs[1:]
    if _is_bridge(vs, pairs, 0):
        return ZERO
    keep, drop = min(a, b), max(a, b)
    contracted = [(keep if x == drop else x, keep if y == drop else y) for x, y in rest]
    return _flow(vs - {drop}, contracted) - _flow(vs, rest)


def _is_bridge(vs, pairs, i) -> bool:
    a, b = pairs[i]
    adj: dict[int, list[int]] = {}
    for j, (x, y) in enumerate(pairs):
        if j == i:
            continue
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)
    seen = {a}
    todo = [a]
    while todo:
        x = todo.pop()
        if x == b:
            return False
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return True


def eval_in_ring(p: LaurentPoly, x: RingValue) -> RingValue:
    """Horner evaluation of an ordinary polynomial ``p`` at a ring element."""
    if p.lo < 0:
        raise ValueError("only ordinary polynomials can be evaluated in a ring")
    acc = x * 0
    for k in range(p.hi, -1, -1):
        acc = acc * x + p.coefficient(k)
    return acc


# -- chain polynomial -----------------------------------------------------------------


def _label_value(g: MultiGraph, e: int, assignment: Mapping[str, RingValue]) -> RingValue:
    lab = g.label(e)
    try:
        return assignment[lab]
    except KeyError:
        raise MissingLabelError(f"no value assigned to edge label {lab!r}") from None


def _one_like(w: RingValue) -> RingValue:
    return w * 0 + 1


def chain_recursive(
    g: MultiGraph,
    assignment: Mapping[str, RingValue],
    w: RingValue,
    order: Optional[Callable[[MultiGraph], int]] = None,
) -> RingValue:
    """Loop rule ``(a - w) Ch(G-a)``, non-loop rule ``(a - 1) Ch(G-a) + Ch(G/a)``."""
    for e in g.edges:
        _label_value(g, e, assignment)
    pick = order or (lambda h: min(h.edges))
    return _chain(g, assignment, w, pick)


def _chain(g, assignment, w, pick) -> RingValue:
    if not g.edges:
        return _one_like(w)
    e = pick(g)
    a = _label_value(g, e, assignment)
    rest = g.delete_edge(e)
    if g.is_loop(e):
        return (a - w) * _chain(rest, assignment, w, pick)
    return (a - 1) * _chain(rest, assignment, w, pick) + _chain(g.contract_edge(e), assignment, w, pick)


def chain_definition(
    g: MultiGraph,
    assignment: Mapping[str, RingValue],
    w: RingValue,
    max_edges: int = DEFAULT_MAX_SUBSET_EDGES,
) -> RingValue:
    """Sum over edge subsets ``Y`` of ``F_{G-Y}(1 - w) * prod_{a in Y} a``."""
    if g.q > max_edges:
        raise SizeGuardError(f"{g.q} edges exceeds subset-sum limit {max_edges}")
    eids = sorted(g.edges)
    values = [_label_value(g, e, assignment) for e in eids]
    x = 1 - w
    total = w * 0
    for mask in range(1 << len(eids)):
        chosen = [eids[i] for i in range(len(eids)) if mask >> i & 1]
        f = flow_poly(g.subgraph_without(chosen))
        if f.is_zero():
            continue
        term = eval_in_ring(f, x)
        for i in range(len(eids)):
            if mask >> i & 1:
                term = term * values[i]
        total = total + term
    return total


# -- replacement ---------------------------------------------------------------------


@dataclass(frozen=True)
class ReplacementData:
    alpha: LaurentPoly
    beta: LaurentPoly
    gamma: RationalFunction
    h_K: LaurentPoly
    h_Kprime: LaurentPoly

    def check(self) -> None:
        assert self.h_Kprime == (SIGMA + 1) * self.beta - self.alpha
        assert self.h_K == self.alpha - self.beta
        if not self.beta.is_zero():
            assert self.gamma == 1 - RationalFunction(self.alpha, self.beta)


def replacement_data(k: MultiGraph, u: int, v: int) -> ReplacementData:
    """``alpha, beta, gamma`` for a two-terminal part ``K`` with terminals ``u, v``."""
    if not k.is_connected():
        raise GraphError("replacement part must be connected")
    h_k = h_delcon(k)
    h_kp = h_delcon(k.identify_vertices(u, v))
    alpha = ((SIGMA + 1) * h_k + h_kp).exact_div(SIGMA)
    beta = (h_k + h_kp).exact_div(SIGMA)
    if beta.is_zero():
        raise BetaZeroError("beta vanishes for this part; gamma is undefined")
    gamma = 1 - RationalFunction(alpha, beta)
    data = ReplacementData(alpha, beta, gamma, h_k, h_kp)
    data.check()
    return data


def compose_h_via_chain(g: MultiGraph, replacements: Mapping[str, ReplacementData]) -> LaurentPoly:
    """``H`` of the graph obtained by replacing each edge ``a`` of ``g`` by ``K_a``.

    Evaluates ``Ch(g)`` at ``w = -sigma`` and ``a = gamma_a`` and rescales by
    ``prod beta_a`` and ``(-1)^(p - q)``.
    """
    if not g.is_connected():
        raise GraphError("base graph must be connected")
    assignment: dict[str, RationalFunction] = {}
    scale = ONE
    for e in sorted(g.edges):
        lab = g.label(e)
        if lab not in replacements:
            raise MissingLabelError(f"no replacement for edge label {lab!r}")
        data = replacements[lab]
        if data.beta.is_zero():
            raise BetaZeroError(f"beta vanishes for label {lab!r}")
        assignment[lab] = data.gamma
        scale = scale * data.beta
    ch = chain_recursive(g, assignment, RationalFunction.from_poly(-SIGMA))
    value = ch * RationalFunction.from_poly(scale)
    if (g.p - g.q) % 2:
        value = -value
    if not value.is_polynomial():
        raise InexactDivisionError(f"composition did not clear to a polynomial: {value}")
    return value.to_poly()
