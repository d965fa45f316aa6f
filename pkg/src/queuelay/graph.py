"""Graphs, k-tree construction sequences and the generator families.

Vertices are dense integer ids ``0..n-1``; an edge is a tuple ``(u, v)``
with ``u < v``.  A k-tree is described by a :class:`ConstructionSequence`:
an initial ``(k+1)``-clique followed by steps that attach a fresh vertex to
an existing k-clique.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .errors import DuplicateChild, InvalidParent, InvalidSequence, SizeOverflow

Edge = Tuple[int, int]

DEFAULT_VERTEX_CAP = 5_000_000


def edge(u: int, v: int) -> Edge:
    """Canonical (sorted) form of the edge ``uv``."""
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    n: int
    edges: FrozenSet[Edge]

    def __post_init__(self):
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        es = set()
        for u, v in edges:
            e = edge(u, v)
            if e in es:
                raise ValueError(f"duplicate edge {e}")
            es.add(e)
        return cls(n, frozenset(es))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> List[set]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and edge(u, v) in self.edges

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled densely in ascending id order."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(vs), es)

    def is_clique(self, vertices: Sequence[int]) -> bool:
        return all(self.has_edge(a, b) for a, b in itertools.combinations(vertices, 2))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


@dataclass(frozen=True)
class Step:
    parent: Tuple[int, ...]
    child: int


def _as_step(s) -> Step:
    if isinstance(s, Step):
        return s if isinstance(s.parent, tuple) else Step(tuple(s.parent), s.child)
    parent, child = s
    return Step(tuple(parent), child)


@dataclass(frozen=True)
class ConstructionSequence:
    """A k-tree as an initial ``(k+1)``-clique plus ``(parent, child)`` steps."""

    k: int
    init: Tuple[int, ...]
    steps: Tuple[Step, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "init", tuple(self.init))
        steps = tuple(_as_step(s) for s in self.steps)
        object.__setattr__(self, "steps", steps)

    @property
    def n(self) -> int:
        return len(self.init) + len(self.steps)

    def construction_order(self) -> List[int]:
        return list(self.init) + [s.child for s in self.steps]

    def validate(self) -> None:
        """Raise unless the sequence satisfies every structural invariant."""
        k = self.k
        if k < 1:
            raise InvalidSequence(f"k must be >= 1, got {k}")
        if len(self.init) != k + 1:
            raise InvalidSequence(f"init must have k+1={k + 1} vertices")
        if sorted(self.init) != list(range(k + 1)):
            raise InvalidSequence("init vertices must be the distinct ids 0..k")
        adj: Dict[int, set] = {v: set(self.init) - {v} for v in self.init}
        for i, st in enumerate(self.steps):
            expected = k + 1 + i
            if st.child in adj:
                raise DuplicateChild(f"step {i}: vertex {st.child} already exists")
            if st.child != expected:
                raise InvalidSequence(f"step {i}: child id {st.child}, expected {expected}")
            p = st.parent
            if len(p) != k or len(set(p)) != k:
                raise InvalidParent(f"step {i}: parent {p} is not a set of {k} vertices")
            for a in p:
                if a not in adj:
                    raise InvalidParent(f"step {i}: parent vertex {a} does not exist yet")
            for a, b in itertools.combinations(p, 2):
                if b not in adj[a]:
                    raise InvalidParent(f"step {i}: parent {p} is not a clique")
            adj[st.child] = set(p)
            for a in p:
                adj[a].add(st.child)

    def children_of(self, parent: Iterable[int]) -> List[int]:
        key = frozenset(parent)
        return [s.child for s in self.steps if frozenset(s.parent) == key]

    def parent_of(self) -> Dict[int, Tuple[int, ...]]:
        return {s.child: s.parent for s in self.steps}


def expand(seq: ConstructionSequence) -> Graph:
    """Build the k-tree described by ``seq``."""
    seq.validate()
    es = [edge(a, b) for a, b in itertools.combinations(seq.init, 2)]
    for st in seq.steps:
        es.extend(edge(a, st.child) for a in st.parent)
    return Graph(seq.n, frozenset(es))


def ktree_edge_count(k: int, n: int) -> int:
    return k * n - k * (k + 1) // 2


# --------------------------------------------------------------------------
# generator families


@dataclass
class EdgeDepthMap:
    """Construction depth of the edges of an m-ary 2-tree.

    Edges of the starting triangle other than the depth-0 edge have no depth
    and are absent from ``depth``.
    """

    depth: Dict[Edge, int] = field(default_factory=dict)
    root: Edge = (0, 1)
    apex: int = 2
    m: int = 0
    t: int = 0

    def __getitem__(self, e: Edge) -> int:
        return self.depth[e]

    def get(self, e: Edge, default=None):
        return self.depth.get(e, default)

    def edges_at(self, d: int) -> List[Edge]:
        return [e for e, x in self.depth.items() if x == d]

    def counts(self) -> List[int]:
        out = [0] * (self.t + 1)
        for x in self.depth.values():
            out[x] += 1
        return out


def mary_vertex_count(m: int, t: int) -> int:
    """Vertices of the m-ary 2-tree of depth t (starting triangle included)."""
    return 3 + sum(m * (2 * m) ** i for i in range(t))


def mary_ktree(m: int, t: int, cap: int = DEFAULT_VERTEX_CAP) -> Tuple[ConstructionSequence, EdgeDepthMap]:
    """The m-ary 2-tree of depth t.

    Starts from the triangle ``{0, 1, 2}`` with ``(0, 1)`` as the depth-0
    edge; every edge of depth ``i < t`` receives ``m`` children, and the two
    edges joining a child to its parent edge get depth ``i + 1``.
    """
    if m < 1 or t < 0:
        raise ValueError("need m >= 1 and t >= 0")
    total = mary_vertex_count(m, t)
    if total > cap:
        raise SizeOverflow(f"m-ary 2-tree (m={m}, t={t}) has {total} vertices > cap {cap}")
    depth: Dict[Edge, int] = {(0, 1): 0}
    steps: List[Step] = []
    frontier = [(0, 1)]
    nxt = 3
    for d in range(1, t + 1):
        new_frontier = []
        for a, b in frontier:
            for _ in range(m):
                x = nxt
                nxt += 1
                steps.append(Step((a, b), x))
                # a < b < x always holds since ids grow
                e1, e2 = (a, x), (b, x)
                depth[e1] = d
                depth[e2] = d
                new_frontier.append(e1)
                new_frontier.append(e2)
        frontier = new_frontier
    seq = ConstructionSequence(2, (0, 1, 2), tuple(steps))
    return seq, EdgeDepthMap(depth, (0, 1), 2, m, t)


def truncate_mary(seq: ConstructionSequence, depths: EdgeDepthMap, n: int) -> Tuple[ConstructionSequence, EdgeDepthMap]:
    """The first ``n`` vertices of an m-ary 2-tree (construction order)."""
    if n < 3:
        raise ValueError("a truncation keeps at least the starting triangle")
    steps = tuple(st for st in seq.steps if st.child < n)
    depth = {e: d for e, d in depths.depth.items() if e[1] < n}
    return ConstructionSequence(seq.k, seq.init, steps), EdgeDepthMap(depth, depths.root, depths.apex, depths.m, depths.t)


# Seven-vertex witness 2-tree; labels 1..7 are ids 0..6.  Parent edges in label form.
FIG3_PARENTS = {3: (1, 2), 4: (1, 3), 5: (1, 4), 6: (3, 4), 7: (3, 6)}


def fig3_witness() -> ConstructionSequence:
    """The seven-vertex 2-tree on which Alice wins the fifth game.

    Vertex with label ``i`` has id ``i - 1``; vertices 3..7 are added one per
    step in label order.
    """
    steps = tuple(
        Step(tuple(p - 1 for p in FIG3_PARENTS[lab]), lab - 1) for lab in range(4, 8)
    )
    return ConstructionSequence(2, (0, 1, 2), steps)


def halfclique_family(k: int, s: int) -> ConstructionSequence:
    """A (k+1)-clique whose k-subclique ``0..k-1`` receives 2s children."""
    if k < 2 or s < 1:
        raise ValueError("need k >= 2 and s >= 1")
    parent = tuple(range(k))
    steps = tuple(Step(parent, k + 1 + i) for i in range(2 * s))
    return ConstructionSequence(k, tuple(range(k + 1)), steps)


def random_ktree(k: int, n: int, seed: int) -> ConstructionSequence:
    """Random k-tree on n vertices; the parent of each step is uniform over
    the k-cliques present so far."""
    if n < k + 1:
        raise ValueError(f"need n >= k+1 = {k + 1}")
    rng = random.Random(seed)
    init = tuple(range(k + 1))
    cliques: List[Tuple[int, ...]] = [c for c in itertools.combinations(init, k)]
    steps = []
    for x in range(k + 1, n):
        parent = cliques[rng.randrange(len(cliques))]
        steps.append(Step(parent, x))
        for drop in range(k):
            cliques.append(tuple(v for i, v in enumerate(parent) if i != drop) + (x,))
    return ConstructionSequence(k, init, tuple(steps))


def random_tree(n: int, seed: int) -> Graph:
    rng = random.Random(seed)
    es = [(rng.randrange(v), v) for v in range(1, n)]
    return Graph.from_edges(n, es)


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    es = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, es)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def all_ktree_sequences(k: int, n: int) -> Iterable[ConstructionSequence]:
    """Every construction sequence of a k-tree on n vertices (labelled)."""
    init = tuple(range(k + 1))

    def rec(cliques, steps, nxt):
        if nxt == n:
            yield ConstructionSequence(k, init, tuple(steps))
            return
        for parent in cliques:
            new = [tuple(v for i, v in enumerate(parent) if i != d) + (nxt,) for d in range(k)]
            yield from rec(cliques + new, steps + [Step(parent, nxt)], nxt + 1)

    yield from rec(list(itertools.combinations(init, k)), [], k + 1)


def nonisomorphic_ktrees(k: int, n: int) -> List[ConstructionSequence]:
    """One construction sequence per isomorphism class of k-trees on n vertices."""
    import networkx as nx

    buckets: Dict[str, List[Tuple[ConstructionSequence, "nx.Graph"]]] = {}
    out = []
    for seq in all_ktree_sequences(k, n):
        g = expand(seq)
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
        key = nx.weisfeiler_lehman_graph_hash(h, iterations=4)
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(h, other) for _, other in bucket):
            continue
        bucket.append((seq, h))
        out.append(seq)
    return out
