"""Bob's replies: fast canonical enumeration and a naive oracle.

Canonical form: children of one side are numbered by rank (twins are
interchangeable), right children are the copies of the left ones with the
same twin index, and queue ids not yet used in the state are introduced in
first-occurrence order along the canonical edge list.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..graph import edge
from .conditions import layout_violation, structural_violation
from .state import (
    AliceMove,
    BobMove,
    GameConfig,
    GameState,
    apply_move,
    check_alice_move,
    new_vertex_layout,
)


# --------------------------------------------------------------------------
# placements


def _side_gap_tuples(lo: int, n_old: int, m: int, consecutive: bool) -> Iterator[Tuple[int, ...]]:
    """Non-decreasing gap tuples; gap g means "before old rank g"."""
    if consecutive:
        for g in range(lo, n_old + 1):
            yield (g,) * m
    else:
        yield from itertools.combinations_with_replacement(range(lo, n_old + 1), m)


def _merge(left_gaps, right_gaps) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Final ranks of (left, right) children for every interleaving inside
    shared gaps."""
    items = [(g, 0, i) for i, g in enumerate(left_gaps)] + [(g, 1, i) for i, g in enumerate(right_gaps)]
    gaps = sorted({g for g, _, _ in items})
    per_gap = []
    for g in gaps:
        nl = sum(1 for x in left_gaps if x == g)
        nr = sum(1 for x in right_gaps if x == g)
        per_gap.append((g, nl, nr))

    def interleavings(nl, nr):
        for ls in itertools.combinations(range(nl + nr), nl):
            s = set(ls)
            yield tuple(0 if i in s else 1 for i in range(nl + nr))

    choices = [list(interleavings(nl, nr)) for _, nl, nr in per_gap]
    for pick in itertools.product(*choices):
        lpos, rpos = [], []
        placed = 0
        for (g, _, _), seq in zip(per_gap, pick):
            for side in seq:
                (lpos if side == 0 else rpos).append(g + placed)
                placed += 1
        yield tuple(lpos), tuple(rpos)


def placements(state: GameState, move: AliceMove, config: GameConfig) -> Iterator[Tuple[int, ...]]:
    """Final ranks of the new vertices compatible with the placement parts of
    conditions 2, 3, 5 and 6."""
    parents, sides = new_vertex_layout(state, move)
    m = move.m
    n_old = state.n
    pos = state.pos
    consecutive = config.active(3)

    def lower(par, side):
        lo = 0
        if config.active(5):
            lo = max(pos[c] for c in par) + 1
        if config.active(2) and state.round == 0:
            init = [v for v in state.initial if not state.paired or state.side[v] == side]
            lo = max(lo, max(pos[v] for v in init) + 1)
        return lo

    if not state.paired:
        lo = lower(parents[0], 0)
        for gaps in _side_gap_tuples(lo, n_old, m, consecutive):
            yield tuple(g + j for j, g in enumerate(gaps))
        return
    lo_l = lower(parents[0], 0)
    lo_r = lower(parents[m], 1)
    if config.active(6):
        lo_l = lo_r = max(lo_l, lo_r, max(pos[c] for c in parents[0] + parents[m]) + 1)
    for lg in _side_gap_tuples(lo_l, n_old, m, consecutive):
        for rg in _side_gap_tuples(lo_r, n_old, m, consecutive):
            for lpos, rpos in _merge(lg, rg):
                if config.active(6) and any(a > b for a, b in zip(lpos, rpos)):
                    continue
                yield lpos + rpos


def _spine(state: GameState, positions: Sequence[int], new_ids: Sequence[int]) -> List[int]:
    total = state.n + len(positions)
    slots: List[Optional[int]] = [None] * total
    for vid, p in zip(new_ids, positions):
        slots[p] = vid
    old = iter(state.order)
    return [s if s is not None else next(old) for s in slots]


# --------------------------------------------------------------------------
# queue assignment search


class _Frame:
    """Per-placement precomputation for the queue DFS."""

    def __init__(self, state, move, config, positions, check_layout):
        self.state = state
        self.config = config
        self.check_layout = check_layout
        parents, sides = new_vertex_layout(state, move)
        base = max(state.order) + 1
        self.new_ids = list(range(base, base + len(parents)))
        order = _spine(state, positions, self.new_ids)
        self.pos = {v: i for i, v in enumerate(order)}
        self.order = order
        m = move.m
        self.m = m
        self.parent = dict(state.parent)
        self.copy = dict(state.copy)
        for i, vid in enumerate(self.new_ids):
            self.parent[vid] = parents[i]
        if state.paired:
            for a, b in zip(self.new_ids[:m], self.new_ids[m:]):
                self.copy[a], self.copy[b] = b, a
        # canonical new edges
        self.edges = []
        self.child_of_edge = []
        for i, vid in enumerate(self.new_ids):
            for c in parents[i]:
                self.edges.append(edge(c, vid))
                self.child_of_edge.append(i)
        idx = {e: j for j, e in enumerate(self.edges)}
        self.forced: List[Optional[int]] = [None] * len(self.edges)  # index of edge whose queue is copied
        for j, e in enumerate(self.edges):
            i = self.child_of_edge[j]
            vid = self.new_ids[i]
            c = e[0] if e[1] == vid else e[1]
            side_first = 0 if i < m else m
            if config.paired and i >= m and config.active(6):
                twin = self.new_ids[i - m]
                self.forced[j] = idx[edge(self.copy[c], twin)]
            elif config.active(4) and i != side_first:
                self.forced[j] = idx[edge(c, self.new_ids[side_first])]
        # old edges by queue, in new ranks
        self.by_queue: Dict[int, List[Tuple[int, int]]] = {}
        for (u, v), q in state.assign.items():
            a, b = self.pos[u], self.pos[v]
            if a > b:
                a, b = b, a
            self.by_queue.setdefault(q, []).append((a, b))
        self.vq = {v: set(s) for v, s in state.vertex_queues().items()}
        for vid in self.new_ids:
            self.vq[vid] = set()
        self.adj_q = {}  # vertex -> list of (neighbour, queue) over assigned edges
        for (u, v), q in state.assign.items():
            self.adj_q.setdefault(u, []).append((v, q))
            self.adj_q.setdefault(v, []).append((u, q))

    def ends(self, e):
        a, b = self.pos[e[0]], self.pos[e[1]]
        return (a, b) if a < b else (b, a)

    def _vii_bad(self, v1, x, v2) -> bool:
        """x is a child of v1 lying right of v1v2 and its copy."""
        p = self.pos
        if v1 not in self.parent.get(x, ()) or p[v2] < p[v1]:
            return False
        w1, w2 = self.copy[v1], self.copy[v2]
        return p[x] > max(p[v1], p[v2], p[w1], p[w2])

    def search(self, limit: Optional[int] = None, rng=None, node_limit: Optional[int] = None) -> List[Tuple[int, ...]]:
        """Queue tuples for the new edges; ``rng`` shuffles the candidate
        order and ``node_limit`` caps the work (both for random play)."""
        out: List[Tuple[int, ...]] = []
        nodes = [0]
        E = len(self.edges)
        assign: List[int] = [0] * E
        ell = self.config.ell
        check_vii = self.config.active(7)
        check_v = self.config.active(5)
        base_nq = self.state.nq
        ends = [self.ends(e) for e in self.edges]
        child_edges: Dict[int, List[int]] = {}
        for j, i in enumerate(self.child_of_edge):
            child_edges.setdefault(i, []).append(j)

        def ok(j, q) -> bool:
            e = self.edges[j]
            a, b = ends[j]
            if self.check_layout:
                for c, d in self.by_queue.get(q, ()):
                    if (c < a and b < d) or (a < c and d < b):
                        return False
                for u in e:
                    s = self.vq[u]
                    if q not in s and len(s) >= ell:
                        return False
            if check_v:
                i = self.child_of_edge[j]
                for jj in child_edges[i]:
                    if jj < j and assign[jj] == q:
                        return False
            if check_vii:
                for u in e:
                    other = e[1] if e[0] == u else e[0]
                    for nb, qq in self.adj_q.get(u, ()):
                        if qq != q:
                            continue
                        if self._vii_bad(u, other, nb) or self._vii_bad(u, nb, other):
                            return False
            return True

        def push(j, q):
            e = self.edges[j]
            assign[j] = q
            self.by_queue.setdefault(q, []).append(ends[j])
            added = []
            for u in e:
                if q not in self.vq[u]:
                    self.vq[u].add(q)
                    added.append(u)
            self.adj_q.setdefault(e[0], []).append((e[1], q))
            self.adj_q.setdefault(e[1], []).append((e[0], q))
            return added

        def pop(j, q, added):
            e = self.edges[j]
            self.by_queue[q].pop()
            for u in added:
                self.vq[u].discard(q)
            self.adj_q[e[0]].pop()
            self.adj_q[e[1]].pop()

        def candidates(j, top):
            f = self.forced[j]
            cands = [assign[f]] if f is not None else list(range(top + 1))
            if rng is not None and f is None:
                rng.shuffle(cands)
            return iter(cands)

        if E == 0:
            return [()]
        # explicit stack: (edge index, fresh-id top, candidate iterator, pushed queue, added)
        stack = [[0, base_nq, candidates(0, base_nq), None, None]]
        while stack:
            if limit is not None and len(out) >= limit:
                break
            if node_limit is not None and nodes[0] > node_limit:
                break
            frame = stack[-1]
            j, top, it, pushed, added = frame
            if pushed is not None:
                pop(j, pushed, added)
                frame[3] = None
            for q in it:
                if ok(j, q):
                    break
            else:
                stack.pop()
                continue
            nodes[0] += 1
            frame[3], frame[4] = q, push(j, q)
            if j + 1 == E:
                out.append(tuple(assign))
                continue
            ntop = top + 1 if q == top else top
            stack.append([j + 1, ntop, candidates(j + 1, ntop), None, None])
        while stack:  # unwind after an early stop
            j, _, _, pushed, added = stack.pop()
            if pushed is not None:
                pop(j, pushed, added)
        return out


def legal_bob_moves(state: GameState, config: GameConfig, move: AliceMove, limit: Optional[int] = None) -> List[BobMove]:
    """All canonical replies satisfying conditions 1..level."""
    check_alice_move(state, move)
    out = []
    for positions in placements(state, move, config):
        frame = _Frame(state, move, config, positions, check_layout=True)
        if config.active(6) and not _alternation_ok(frame):
            continue
        for qs in frame.search(None if limit is None else limit - len(out)):
            out.append(BobMove(positions, qs))
        if limit is not None and len(out) >= limit:
            break
    return out


def random_bob_move(state: GameState, config: GameConfig, move: AliceMove, rng, tries: int = 30) -> Optional[BobMove]:
    """A random legal reply, or None if none turned up (not a proof)."""
    check_alice_move(state, move)
    if state.paired:
        pool = list(placements(state, move, config))
    for _ in range(tries):
        if state.paired:
            if not pool:
                return None
            positions = rng.choice(pool)
        else:
            positions = _random_placement(state, move, config, rng)
            if positions is None:
                return None
        frame = _Frame(state, move, config, positions, check_layout=True)
        if config.active(6) and not _alternation_ok(frame):
            continue
        found = frame.search(limit=1, rng=rng, node_limit=5000)
        if found:
            return BobMove(positions, found[0])
    return None


def _random_placement(state, move, config, rng):
    parents, _ = new_vertex_layout(state, move)
    n_old, pos, m = state.n, state.pos, move.m
    lo = 0
    if config.active(5):
        lo = max(pos[c] for c in parents[0]) + 1
    if config.active(2) and state.round == 0:
        lo = max(lo, max(pos[v] for v in state.initial) + 1)
    if lo > n_old:
        return None
    # bias towards the end of the spine, where Bob is least constrained
    if config.active(3) or rng.random() < 0.5:
        g = n_old if rng.random() < 0.5 else rng.randint(lo, n_old)
        gaps = [g] * m
    else:
        gaps = sorted(rng.randint(lo, n_old) for _ in range(m))
    return tuple(g + j for j, g in enumerate(gaps))


def structural_candidates(state: GameState, config: GameConfig, move: AliceMove) -> Iterator[BobMove]:
    """Canonical replies meeting conditions 2..level, ignoring condition 1."""
    check_alice_move(state, move)
    for positions in placements(state, move, config):
        frame = _Frame(state, move, config, positions, check_layout=False)
        if config.active(6) and not _alternation_ok(frame):
            continue
        for qs in frame.search():
            yield BobMove(positions, qs)


def _alternation_ok(frame: _Frame) -> bool:
    pos, copy, k = frame.pos, frame.copy, frame.state.k
    m = frame.m
    for x in frame.new_ids[:m]:
        par = frame.parent[x]
        for sub in itertools.combinations(par, k - 1):
            cs = sorted(sub + (x,), key=pos.__getitem__)
            seq = []
            for c in cs:
                seq.extend((c, copy[c]))
            if any(pos[a] > pos[b] for a, b in zip(seq, seq[1:])):
                return False
    return True


# --------------------------------------------------------------------------
# naive oracle


def canonical_reply(state: GameState, move: AliceMove, positions, queues) -> BobMove:
    """Canonical form of a labelled reply (children in any order, any fresh ids)."""
    parents, _ = new_vertex_layout(state, move)
    m = move.m
    k = len(parents[0])
    t = len(parents)
    blocks = [tuple(queues[i * k : (i + 1) * k]) for i in range(t)]
    sides = [list(range(m))] + ([list(range(m, t))] if t > m else [])
    new_pos, new_blocks = [], []
    for idxs in sides:
        idxs = sorted(idxs, key=lambda i: positions[i])
        new_pos.extend(positions[i] for i in idxs)
        new_blocks.extend(blocks[i] for i in idxs)
    relabel = {}
    qs = []
    for q in itertools.chain.from_iterable(new_blocks):
        if q >= state.nq:
            if q not in relabel:
                relabel[q] = state.nq + len(relabel)
            q = relabel[q]
        qs.append(q)
    return BobMove(tuple(new_pos), tuple(qs))


def _labelled_queues(nq: int, count: int) -> Iterator[Tuple[int, ...]]:
    """Queue tuples over existing ids plus fresh ids in first-use order.

    Fresh ids are interchangeable, so this loses nothing before
    canonicalisation.
    """

    def rec(prefix, top):
        if len(prefix) == count:
            yield tuple(prefix)
            return
        for q in range(top + 1):
            prefix.append(q)
            yield from rec(prefix, top + 1 if q == top else top)
            prefix.pop()

    yield from rec([], nq)


def naive_bob_moves(state: GameState, config: GameConfig, move: AliceMove) -> List[BobMove]:
    """Every labelled (insertion, assignment) pair, canonicalised and
    filtered by the standalone condition checker."""
    check_alice_move(state, move)
    parents, _ = new_vertex_layout(state, move)
    t = len(parents)
    n_edges = sum(len(p) for p in parents)
    total = state.n + t
    seen = set()
    out = []
    for positions in itertools.permutations(range(total), t):
        for queues in _labelled_queues(state.nq, n_edges):
            bm = canonical_reply(state, move, positions, queues)
            if bm in seen:
                continue
            seen.add(bm)
            new = apply_move(state, move, bm)
            if layout_violation(new, config.ell) is not None:
                continue
            if structural_violation(state, move, new, config) is not None:
                continue
            out.append(bm)
    return out
