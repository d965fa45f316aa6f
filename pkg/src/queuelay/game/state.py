"""Game configuration, state and moves of the Alice/Bob construction games.

Alice grows a k-tree round by round; Bob extends the queue layout subject to
the conditions active at the game's level:

1. the layout is an ell-local queue layout;
2. first-round children lie right of the initial clique;
3. the children of a round are inserted consecutively;
4. twin edges share a queue;
5. children lie right of their parent clique and their parent edges use
   pairwise different queues;
6. (paired games) copy cliques alternate, children follow their parent
   cliques' order right of both, every edge shares its copy's queue;
7. (paired games) a child x of v1 right of an edge v1v2 and its copy gets
   ``queue(v1 x) != queue(v1 v2)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..errors import ConfigMismatch, InvalidAliceMove
from ..graph import ConstructionSequence, Edge, Graph, Step, edge
from ..layout import LinearOrder, QueueLayout

ROMAN = {1: "i", 2: "ii", 3: "iii", 4: "iv", 5: "v", 6: "vi", 7: "vii"}
LEVELS = {v: k for k, v in ROMAN.items()}


def parse_level(text) -> int:
    if isinstance(text, int):
        return text
    t = str(text).strip().lower()
    if t in LEVELS:
        return LEVELS[t]
    return int(t)


@dataclass(frozen=True)
class GameConfig:
    k: int
    ell: int
    level: int
    max_rounds: int = 10
    max_vertices: int = 64

    def __post_init__(self):
        if not 1 <= self.level <= 7:
            raise ConfigMismatch(f"level must be 1..7, got {self.level}")
        if self.k < 1 or self.ell < 1:
            raise ConfigMismatch("k and ell must be positive")
        if self.level >= 5 and self.ell > self.k:
            raise ConfigMismatch("levels v and up need ell <= k")

    @property
    def paired(self) -> bool:
        return self.level >= 6

    def active(self, cond: int) -> bool:
        return cond <= self.level


@dataclass(frozen=True)
class AliceMove:
    """Clique (left graph when paired) and number of children."""

    clique: Tuple[int, ...]
    m: int


@dataclass(frozen=True)
class BobMove:
    """Final spine ranks of the new vertices and queues of the new edges.

    New vertices are listed left children by rank, then (paired) right
    children by rank; new edges follow that vertex order, each vertex's
    parent vertices taken by increasing rank.
    """

    positions: Tuple[int, ...]
    queues: Tuple[int, ...]


@dataclass(frozen=True)
class RoundRecord:
    clique: Tuple[int, ...]
    m: int
    children: Tuple[int, ...]
    copy_clique: Tuple[int, ...] = ()
    copy_children: Tuple[int, ...] = ()


class GameState:
    """Immutable snapshot ``G_r`` with Bob's layout.

    ``initial`` lists the initial clique (left then right when paired) in
    spine order; ``parent`` maps every non-initial vertex to its parent
    clique; ``copy`` is the left/right involution of paired games.
    """

    __slots__ = (
        "k", "paired", "order", "pos", "assign", "parent", "initial",
        "rounds", "copy", "side", "nq", "_adj", "_vq",
    )

    def __init__(self, k, paired, order, assign, parent, initial, rounds=(), copy=None, side=None):
        self.k = k
        self.paired = paired
        self.order: Tuple[int, ...] = tuple(order)
        self.pos: Dict[int, int] = {v: i for i, v in enumerate(self.order)}
        self.assign: Dict[Edge, int] = dict(assign)
        self.parent: Dict[int, Tuple[int, ...]] = dict(parent)
        self.initial: Tuple[int, ...] = tuple(initial)
        self.rounds: Tuple[RoundRecord, ...] = tuple(rounds)
        self.copy: Dict[int, int] = dict(copy or {})
        self.side: Dict[int, int] = dict(side or {})
        self.nq = max(self.assign.values(), default=-1) + 1
        self._adj = None
        self._vq = None

    # -- derived views -----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def round(self) -> int:
        return len(self.rounds)

    def adjacency(self) -> Dict[int, FrozenSet[int]]:
        if self._adj is None:
            adj = {v: set() for v in self.order}
            for u, v in self.assign:
                adj[u].add(v)
                adj[v].add(u)
            self._adj = {v: frozenset(s) for v, s in adj.items()}
        return self._adj

    def vertex_queues(self) -> Dict[int, FrozenSet[int]]:
        if self._vq is None:
            vq = {v: set() for v in self.order}
            for (u, v), q in self.assign.items():
                vq[u].add(q)
                vq[v].add(q)
            self._vq = {v: frozenset(s) for v, s in vq.items()}
        return self._vq

    def layout(self) -> QueueLayout:
        return QueueLayout(LinearOrder(self.order), dict(self.assign))

    def graph(self) -> Tuple[Graph, Dict[int, int]]:
        """The current graph relabelled to ``0..n-1`` by vertex id."""
        ids = sorted(self.order)
        index = {v: i for i, v in enumerate(ids)}
        g = Graph.from_edges(len(ids), [(index[u], index[v]) for u, v in self.assign])
        return g, index

    def sorted_by_rank(self, vs) -> Tuple[int, ...]:
        return tuple(sorted(vs, key=self.pos.__getitem__))

    def is_clique(self, vs) -> bool:
        adj = self.adjacency()
        return all(b in adj[a] for a, b in itertools.combinations(vs, 2))

    def left_vertices(self) -> List[int]:
        if not self.paired:
            return list(self.order)
        return [v for v in self.order if self.side[v] == 0]

    def children(self, c: int) -> List[int]:
        return [x for x, p in self.parent.items() if c in p]

    def queue_of(self, u: int, v: int) -> int:
        return self.assign[edge(u, v)]

    def construction_sequence(self) -> ConstructionSequence:
        """The (left) graph as a k-tree sequence; the first child joins the
        initial clique to form the (k+1)-clique base."""
        if self.paired:
            base = [v for v in self.initial if self.side[v] == 0]
        else:
            base = list(self.initial)
        kids = []
        for rec in self.rounds:
            kids.extend(rec.children)
        if not kids:
            raise ValueError("no round played; the initial clique is not a k-tree")
        base = sorted(base)
        first = kids[0]
        ids = base + [first] + kids[1:]
        index = {v: i for i, v in enumerate(ids)}
        steps = tuple(Step(tuple(index[p] for p in self.parent[x]), index[x]) for x in kids[1:])
        return ConstructionSequence(self.k, tuple(range(self.k + 1)), steps)

    def key(self):
        return (self.order, tuple(sorted(self.assign.items())))

    def __repr__(self):
        return f"GameState(round={self.round}, n={self.n}, order={list(self.order)})"


# --------------------------------------------------------------------------
# initial states


def _set_partitions(items: Sequence) -> List[List[int]]:
    """Restricted growth strings: canonical queue labels for ``items``."""
    out = []

    def rec(i, labels, top):
        if i == len(items):
            out.append(list(labels))
            return
        for q in range(top + 1):
            labels.append(q)
            rec(i + 1, labels, max(top, q + 1) if q == top else top)
            labels.pop()

    rec(0, [], 0)
    return out


def initial_states(config: GameConfig) -> List[GameState]:
    """Every canonical initial layout Bob may choose for the initial clique(s)."""
    from .conditions import layout_violation  # local import: cycle

    k = config.k
    out = []
    if not config.paired:
        verts = list(range(k))
        es = list(itertools.combinations(verts, 2))
        for labels in _set_partitions(es):
            st = GameState(k, False, verts, dict(zip(es, labels)), {}, verts)
            if layout_violation(st, config.ell) is None:
                out.append(st)
        return out
    left = list(range(k))
    right = list(range(k, 2 * k))
    order = [v for pair in zip(left, right) for v in pair]
    copy = {**{a: b for a, b in zip(left, right)}, **{b: a for a, b in zip(left, right)}}
    side = {**{a: 0 for a in left}, **{b: 1 for b in right}}
    es = list(itertools.combinations(left, 2))
    for labels in _set_partitions(es):
        assign = dict(zip(es, labels))
        for (a, b), q in zip(es, labels):
            assign[edge(copy[a], copy[b])] = q
        st = GameState(k, True, order, assign, {}, order, (), copy, side)
        if layout_violation(st, config.ell) is None:
            out.append(st)
    return out


def check_alice_move(state: GameState, move: AliceMove) -> None:
    c = tuple(move.clique)
    if move.m < 1:
        raise InvalidAliceMove("m must be >= 1")
    if len(c) != state.k or len(set(c)) != state.k:
        raise InvalidAliceMove(f"clique {c} must have {state.k} distinct vertices")
    for v in c:
        if v not in state.pos:
            raise InvalidAliceMove(f"vertex {v} not in the current graph")
    if state.k > 1 and not state.is_clique(c):
        raise InvalidAliceMove(f"{c} is not a clique")
    if state.paired and any(state.side[v] != 0 for v in c):
        raise InvalidAliceMove("paired games take the left copy of the clique")


def new_vertex_layout(state: GameState, move: AliceMove):
    """Parent cliques (by rank) of the new vertices in canonical order.

    Returns ``(parents, sides)``: ``parents[i]`` is the parent clique of the
    i-th new vertex, sorted by current rank.
    """
    c = state.sorted_by_rank(move.clique)
    parents = [c] * move.m
    sides = [0] * move.m
    if state.paired:
        cc = state.sorted_by_rank(state.copy[v] for v in move.clique)
        parents += [cc] * move.m
        sides += [1] * move.m
    return parents, sides


def apply_move(state: GameState, move: AliceMove, bob: BobMove) -> GameState:
    """State after Bob's reply (no rule checking here)."""
    parents, sides = new_vertex_layout(state, move)
    t = len(parents)
    if len(bob.positions) != t:
        raise ValueError("positions do not match the number of new vertices")
    base = max(state.order) + 1 if state.order else 0
    new_ids = list(range(base, base + t))
    total = state.n + t
    slots: List[Optional[int]] = [None] * total
    for vid, p in zip(new_ids, bob.positions):
        if not 0 <= p < total or slots[p] is not None:
            raise ValueError(f"bad position {p}")
        slots[p] = vid
    old = iter(state.order)
    order = [s if s is not None else next(old) for s in slots]
    assign = dict(state.assign)
    parent = dict(state.parent)
    qi = iter(bob.queues)
    for vid, par in zip(new_ids, parents):
        parent[vid] = par
        for c in par:
            assign[edge(c, vid)] = next(qi)
    m = move.m
    left_kids = tuple(new_ids[:m])
    rec = RoundRecord(tuple(move.clique), m, left_kids)
    copy, side = state.copy, state.side
    if state.paired:
        right_kids = tuple(new_ids[m:])
        rec = RoundRecord(tuple(move.clique), m, left_kids, tuple(state.copy[v] for v in move.clique), right_kids)
        copy = dict(copy)
        side = dict(side)
        for a, b in zip(left_kids, right_kids):
            copy[a], copy[b] = b, a
            side[a], side[b] = 0, 1
    return GameState(state.k, state.paired, order, assign, parent, state.initial, state.rounds + (rec,), copy, side)
