"""Constructive layouts: star partitions as queues, BFS layouts of trees."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import CoverageError, NotATree
from .graph import ConstructionSequence, Edge, Graph, edge, expand
from .layout import LinearOrder, QueueLayout


@dataclass
class StarPartition:
    """Edge partition into stars; ``stars[i] = (center, edges)``."""

    stars: List[Tuple[int, List[Edge]]] = field(default_factory=list)

    def __post_init__(self):
        for c, es in self.stars:
            for e in es:
                if c not in e:
                    raise ValueError(f"edge {e} does not contain star center {c}")

    def index(self) -> Dict[Edge, int]:
        out = {}
        for i, (_, es) in enumerate(self.stars):
            for e in es:
                if e in out:
                    raise CoverageError(f"edge {e} is in two stars")
                out[e] = i
        return out

    def incidence(self, n: int) -> List[int]:
        """Number of stars touching each vertex."""
        touch: List[Set[int]] = [set() for _ in range(n)]
        for i, (_, es) in enumerate(self.stars):
            for u, v in es:
                touch[u].add(i)
                touch[v].add(i)
        return [len(t) for t in touch]


def stars_to_queues(g: Graph, sp: StarPartition, order: LinearOrder) -> QueueLayout:
    """One queue per star; valid under every spine order."""
    idx = sp.index()
    if set(idx) != set(g.edges):
        raise CoverageError("star partition does not cover the edge set exactly")
    return QueueLayout(order, dict(idx))


def ordered_star_partition(g: Graph, order: Sequence[int]) -> StarPartition:
    """Star at each vertex holding its edges to neighbours later in ``order``.

    Empty stars are dropped.
    """
    pos = {v: i for i, v in enumerate(order)}
    adj = g.adjacency()
    stars = []
    for v in order:
        es = sorted(edge(v, w) for w in adj[v] if pos[w] > pos[v])
        if es:
            stars.append((v, es))
    return StarPartition(stars)


def degeneracy_order(g: Graph) -> Tuple[List[int], int]:
    """Min-degree removal order (ties: smallest id) and the degeneracy."""
    adj = g.adjacency()
    deg = [len(a) for a in adj]
    maxd = max(deg, default=0)
    buckets: List[Set[int]] = [set() for _ in range(maxd + 1)]
    for v, d in enumerate(deg):
        buckets[d].add(v)
    removed = [False] * g.n
    out = []
    degeneracy = 0
    lo = 0
    for _ in range(g.n):
        lo = 0
        while not buckets[lo]:
            lo += 1
        v = min(buckets[lo])
        buckets[lo].remove(v)
        removed[v] = True
        degeneracy = max(degeneracy, lo)
        out.append(v)
        for w in adj[v]:
            if not removed[w]:
                buckets[deg[w]].remove(w)
                deg[w] -= 1
                buckets[deg[w]].add(w)
    return out, degeneracy


def degeneracy(g: Graph) -> int:
    return degeneracy_order(g)[1]


def degeneracy_star_partition(g: Graph) -> StarPartition:
    """Stars along the reversed removal order, so every vertex has at most
    ``degeneracy(g)`` earlier neighbours and meets at most that many + 1 stars."""
    removal, _ = degeneracy_order(g)
    return ordered_star_partition(g, removal[::-1])


def star_queue_layout(seq: ConstructionSequence, order: Optional[LinearOrder] = None) -> QueueLayout:
    """Queue ``Q_i`` = edges from the i-th constructed vertex to later neighbours.

    Uses the construction order as spine when ``order`` is omitted.  Every
    vertex meets its own queue and those of its at most k earlier neighbours.
    """
    g = expand(seq)
    cons = seq.construction_order()
    if order is None:
        order = LinearOrder(cons)
    sp = ordered_star_partition(g, cons)
    return stars_to_queues(g, sp, order)


def bfs_order(tree: Graph, root: int = 0) -> List[int]:
    adj = tree.adjacency()
    seen = {root}
    out = []
    dq = deque([root])
    while dq:
        u = dq.popleft()
        out.append(u)
        for w in sorted(adj[u]):
            if w not in seen:
                seen.add(w)
                dq.append(w)
    return out


def bfs_tree_layout(tree: Graph) -> QueueLayout:
    """Single-queue layout of a tree along a BFS order from vertex 0."""
    if tree.n == 0 or tree.m != tree.n - 1 or not tree.is_connected():
        raise NotATree(f"graph with n={tree.n}, m={tree.m} is not a tree")
    order = LinearOrder(bfs_order(tree, 0))
    return QueueLayout(order, {e: 0 for e in tree.edges})
