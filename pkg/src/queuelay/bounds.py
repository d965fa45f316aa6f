"""Density invariants (mad, degeneracy, Nash-Williams arboricity) and the
local queue number sandwich ``mad/4 <= lqn <= mad/2 + 2``.

All densities are :class:`fractions.Fraction`; no floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Set, Tuple

import networkx as nx

from .constructors import degeneracy
from .errors import EmptyGraph, InvalidLayout, TooSmall
from .graph import Graph
from .layout import QueueLayout, validate_layout

EXHAUSTIVE_LIMIT = 16


def _closure(g: Graph, p: int, q: int, forced: Tuple[int, ...] = ()) -> Tuple[int, Set[int]]:
    """Maximise ``q*|E(S)| - p*|S|`` over vertex sets S containing ``forced``.

    Edge-vertex incidence network: source -> edge node (cap q), edge node ->
    endpoints (uncapacitated), vertex -> sink (cap p).
    """
    h = nx.DiGraph()
    s, t = "s", "t"
    h.add_node(s)
    h.add_node(t)
    for v in range(g.n):
        h.add_edge(("v", v), t, capacity=p)
    for u, v in g.edges:
        node = ("e", u, v)
        h.add_edge(s, node, capacity=q)
        h.add_edge(node, ("v", u))
        h.add_edge(node, ("v", v))
    for v in forced:
        h.add_edge(s, ("v", v))
    cut, (src_side, _) = nx.minimum_cut(h, s, t)
    verts = {x[1] for x in src_side if isinstance(x, tuple) and x[0] == "v"}
    # forced vertices add no capacity from the source beyond infinity
    return q * g.m - cut, verts


def _edges_within(g: Graph, verts: Set[int]) -> int:
    return sum(1 for u, v in g.edges if u in verts and v in verts)


def mad(g: Graph) -> Fraction:
    """Exact maximum average degree ``max 2|E(H)|/|V(H)|``."""
    if g.n == 0:
        raise EmptyGraph("mad of the empty graph")
    if g.m == 0:
        return Fraction(0)
    lam = Fraction(g.m, g.n)
    while True:
        value, verts = _closure(g, lam.numerator, lam.denominator)
        if value <= 0 or not verts:
            return 2 * lam
        better = Fraction(_edges_within(g, verts), len(verts))
        if better <= lam:  # cannot happen for a positive closure
            return 2 * lam
        lam = better


def _adjacency_masks(g: Graph) -> List[int]:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def subset_edge_counts(g: Graph) -> List[int]:
    """``|E(G[S])|`` for every vertex bitmask S."""
    if g.n > 24:
        raise ValueError("exhaustive enumeration limited to 24 vertices")
    adj = _adjacency_masks(g)
    counts = [0] * (1 << g.n)
    for mask in range(1, 1 << g.n):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        counts[mask] = counts[rest] + bin(adj[v] & rest).count("1")
    return counts


def mad_exhaustive(g: Graph) -> Fraction:
    """Brute force over all nonempty vertex subsets (test oracle)."""
    if g.n == 0:
        raise EmptyGraph("mad of the empty graph")
    counts = subset_edge_counts(g)
    best = Fraction(0)
    for mask in range(1, 1 << g.n):
        d = Fraction(2 * counts[mask], bin(mask).count("1"))
        if d > best:
            best = d
    return best


def nash_williams_arboricity(g: Graph) -> int:
    """``max ceil(|E(H)| / (|V(H)| - 1))`` over subgraphs with >= 2 vertices."""
    if g.n < 2:
        raise TooSmall("arboricity needs at least two vertices")
    if g.m == 0:
        return 0
    if g.n <= EXHAUSTIVE_LIMIT:
        counts = subset_edge_counts(g)
        best = 0
        for mask in range(1, 1 << g.n):
            size = bin(mask).count("1")
            if size >= 2:
                best = max(best, -(-counts[mask] // (size - 1)))
        return best
    a = max(1, -(-g.m // (g.n - 1)))
    while _arboricity_violated(g, a):
        a += 1
    return a


def _arboricity_violated(g: Graph, a: int) -> bool:
    """Is there H with >= 2 vertices and |E(H)| > a(|V(H)| - 1)?"""
    for u, v in sorted(g.edges):
        value, _ = _closure(g, a, 1, forced=(u, v))
        if value + a > 0:
            return True
    return False


@dataclass(frozen=True)
class BoundsReport:
    mad: Fraction
    degeneracy: int
    arboricity_nw: int
    lqn_lower: Fraction
    lqn_upper: Fraction

    @property
    def lqn_lower_int(self) -> int:
        return math.ceil(self.lqn_lower)

    @property
    def lqn_upper_int(self) -> int:
        return math.floor(self.lqn_upper)

    def to_json(self) -> dict:
        def frac(x: Fraction) -> dict:
            return {"num": x.numerator, "den": x.denominator}

        return {
            "schema": "queuelay/1",
            "mad": frac(self.mad),
            "degeneracy": self.degeneracy,
            "arboricity_nw": self.arboricity_nw,
            "lqn_lower": frac(self.lqn_lower),
            "lqn_upper": frac(self.lqn_upper),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BoundsReport":
        def frac(d):
            return Fraction(d["num"], d["den"])

        return cls(frac(obj["mad"]), obj["degeneracy"], obj["arboricity_nw"], frac(obj["lqn_lower"]), frac(obj["lqn_upper"]))


def thm2_bounds(g: Graph) -> BoundsReport:
    """Density bounds on the local queue number of ``g``."""
    d = mad(g)
    arb = nash_williams_arboricity(g) if g.n >= 2 else 0
    return BoundsReport(d, degeneracy(g), arb, d / 4, d / 2 + 2)


def queue_edge_bound_check(g: Graph, layout: QueueLayout) -> List[int]:
    """Queues breaking ``|E(Q)| <= 2|V_Q| - 3``; empty for a sound layout."""
    res = validate_layout(g, layout)
    if not res.ok:
        raise InvalidLayout("queue edge bound needs a valid layout", res)
    return _queue_edge_violations(layout)


def _queue_edge_violations(layout: QueueLayout) -> List[int]:
    vq = layout.queue_vertices()
    bad = []
    for q, es in sorted(layout.queues().items()):
        nv = len(vq[q])
        if nv >= 2 and len(es) > 2 * nv - 3:
            bad.append(q)
    return bad
