"""Certificate extractors: non-nesting children of the m-ary 2-tree and of
half cliques."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from ..errors import DepthMismatch
from ..graph import ConstructionSequence, Edge, EdgeDepthMap, Graph, edge
from ..layout import (
    LinearOrder,
    LocalityViolation,
    QueueLayout,
    RainbowWitness,
    find_nesting_pair,
    outside,
)


@dataclass(frozen=True)
class NonNestingWitness:
    """Children placed outside the span of their parent clique."""

    clique: Tuple[int, ...]
    children: Tuple[int, ...]
    s: int

    def verify(self, order: LinearOrder) -> bool:
        return len(self.children) >= self.s and all(outside(x, self.clique, order) for x in self.children)


def edge_children(g: Graph, depths: EdgeDepthMap) -> Dict[Edge, List[int]]:
    """Children of every edge that has a depth, checked against ``g``."""
    if depths.root not in depths.depth or depths.depth[depths.root] != 0:
        raise DepthMismatch("root edge must have depth 0")
    lower: Dict[int, List[int]] = {}
    for (a, b), d in depths.depth.items():
        if (a, b) not in g.edges:
            raise DepthMismatch(f"edge {(a, b)} is not in the graph")
        if d == 0:
            continue
        lower.setdefault(b, []).append(a)
    kids: Dict[Edge, List[int]] = {e: [] for e in depths.depth}
    for x, ps in sorted(lower.items()):
        if len(ps) != 2:
            raise DepthMismatch(f"vertex {x} has {len(ps)} parent edges with a depth, expected 2")
        par = edge(*ps)
        d = depths.depth.get(par)
        if d is None or depths.depth[edge(ps[0], x)] != d + 1 or depths.depth[edge(ps[1], x)] != d + 1:
            raise DepthMismatch(f"depths around child {x} are inconsistent")
        kids[par].append(x)
    return kids


def lemma4_analyze(
    g: Graph, depths: EdgeDepthMap, layout: QueueLayout, s: int
) -> Union[NonNestingWitness, RainbowWitness, LocalityViolation, None]:
    """Either an edge of depth < t with >= s non-nesting children, or a
    same-queue nesting pair found along the rainbow-forcing walk.

    For layouts that are not 2-local the walk's pigeonhole can fail; the
    result is then any nesting pair or over-full vertex of the layout.  None
    means the layout is a valid 2-local layout in which every edge keeps
    fewer than s non-nesting children, which the walk rules out only when
    the tree is deep enough (depth >= 6 with m >= s + 4).
    """
    kids = edge_children(g, depths)
    order = layout.order
    by_depth = sorted(kids, key=lambda e: (depths.depth[e], e))
    nesting: Dict[Edge, List[int]] = {}
    for e in by_depth:
        if depths.depth[e] >= depths.t:
            continue
        non = [x for x in kids[e] if outside(x, e, order)]
        if len(non) >= s:
            return NonNestingWitness(e, tuple(non), s)
        nesting[e] = [x for x in kids[e] if x not in non]
    hit = _walk(depths, layout, nesting)
    if hit is not None:
        return hit
    bad = find_nesting_pair(layout)
    if bad is not None:
        return RainbowWitness(bad.edges, bad.queue)
    vq = layout.vertex_queues()
    for v in sorted(vq):
        if len(vq[v]) > 2:
            return LocalityViolation(v, frozenset(vq[v]), 2)
    return None


def _walk(depths: EdgeDepthMap, layout: QueueLayout, nesting: Dict[Edge, List[int]]) -> Optional[RainbowWitness]:
    """vw -> w' -> w'' -> (x, y) -> u, restarting from v x when the second
    edge shares the root's queue; every stage uses nesting children only."""
    q = layout.assign

    def kids(a, b):
        return nesting.get(edge(a, b), [])

    def from_start(v, a, anchor):
        """Start edge v a; ``anchor`` holds the edges already on the walk."""
        for b in kids(v, a)[:5]:
            five = kids(v, b)[:5]
            groups: Dict[Tuple[int, int], List[int]] = {}
            for x in five:
                groups.setdefault((q[edge(v, x)], q[edge(b, x)]), []).append(x)
            for xs in groups.values():
                if len(xs) < 2:
                    continue
                x, y = sorted(xs[:2], key=layout.order.pos.__getitem__)
                for u in kids(y, b)[:5]:
                    local = anchor + [edge(v, a), edge(v, b), edge(v, x), edge(v, y),
                                      edge(b, x), edge(b, y), edge(y, u), edge(b, u)]
                    hit = find_nesting_pair(layout, list(dict.fromkeys(local)))
                    if hit is not None:
                        return RainbowWitness(hit.edges, hit.queue)
        return None

    root = depths.root
    for v, w in (root, root[::-1]):
        for w1 in kids(v, w)[:5]:
            hit = from_start(v, w1, [root])
            if hit is not None:
                return hit
            # second edge in the root's queue: restart from v x two levels down
            for w2 in kids(v, w1)[:5]:
                for x in kids(v, w2)[:5]:
                    hit = from_start(v, x, [root, edge(v, w1), edge(v, w2)])
                    if hit is not None:
                        return hit
    return None


def halfclique_nonnesting(seq: ConstructionSequence, layout: QueueLayout):
    """Half of the parent clique (its ceil(k/2) leftmost or rightmost
    vertices by rank) with at least s of the 2s children outside its span.

    ``seq`` is a :func:`halfclique_family` sequence.

    The two halves share at most one vertex, so no child lies strictly
    inside both spans and one half keeps at least half the children.
    """
    clique = seq.steps[0].parent
    children = [st.child for st in seq.steps]
    order = layout.order
    cs = sorted(clique, key=order.rank)
    h = math.ceil(len(cs) / 2)
    s = len(children) // 2
    best = None
    for half in (tuple(cs[:h]), tuple(cs[-h:])):
        out = tuple(x for x in children if outside(x, half, order))
        if best is None or len(out) > len(best[1]):
            best = (half, out)
        if len(out) >= s:
            return half, NonNestingWitness(half, out, s)
    half, out = best
    return half, NonNestingWitness(half, out, s)
