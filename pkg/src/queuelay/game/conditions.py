"""Standalone checkers for the seven game conditions.

These work on whole states and never look at how a move was generated, so
they double as the oracle for the fast enumerator in :mod:`.moves`.
"""

from __future__ import annotations

import itertools
from typing import Optional

from ..layout import LocalityViolation, find_nesting_pair
from .state import AliceMove, GameConfig, GameState


def layout_violation(state: GameState, ell: int, prefer=None):
    """Condition 1: a nesting pair or an over-full vertex, else None.

    ``prefer`` names a vertex whose locality is reported first when it
    exceeds ``ell``.
    """
    vq = state.vertex_queues()
    if prefer is not None and len(vq[prefer]) > ell:
        return LocalityViolation(prefer, vq[prefer], ell)
    bad = find_nesting_pair(state.layout())
    if bad is not None:
        return bad
    for v in state.order:
        if len(vq[v]) > ell:
            return LocalityViolation(v, vq[v], ell)
    return None


def _new_children(prev: GameState, new: GameState):
    """(left children, right children) added between the two states."""
    rec = new.rounds[-1]
    return list(rec.children), list(rec.copy_children)


def structural_violation(prev: GameState, move: AliceMove, new: GameState, config: GameConfig) -> Optional[int]:
    """Smallest failing condition among 2..level, or None."""
    pos = new.pos
    left, right = _new_children(prev, new)
    sides = [left, right] if new.paired else [left]
    old = set(prev.order)
    for cond in range(2, config.level + 1):
        if cond == 2 and prev.round == 0:
            for kids in sides:
                if not kids:
                    continue
                init = [v for v in new.initial if not new.paired or new.side[v] == new.side[kids[0]]]
                hi = max(pos[v] for v in init)
                if any(pos[x] <= hi for x in kids):
                    return 2
        elif cond == 3:
            for kids in sides:
                lo = min(pos[x] for x in kids)
                hi = max(pos[x] for x in kids)
                if any(v in old for v in new.order[lo : hi + 1]):
                    return 3
        elif cond == 4:
            for kids in sides:
                for c in new.parent[kids[0]]:
                    if len({new.queue_of(c, x) for x in kids}) > 1:
                        return 4
        elif cond == 5:
            for kids in sides:
                for x in kids:
                    par = new.parent[x]
                    if any(pos[c] > pos[x] for c in par):
                        return 5
                    qs = [new.queue_of(c, x) for c in par]
                    if len(set(qs)) != len(qs):
                        return 5
        elif cond == 6:
            if not _sisters_ok(new, left, right):
                return 6
        elif cond == 7:
            if diverse_children_violation(new) is not None:
                return 7
    return None


def _alternate(state: GameState, clique) -> bool:
    pos = state.pos
    cs = sorted(clique, key=pos.__getitem__)
    seq = []
    for c in cs:
        seq.extend((c, state.copy[c]))
    return all(pos[a] < pos[b] for a, b in zip(seq, seq[1:]))


def _sisters_ok(new: GameState, left, right) -> bool:
    pos = new.pos
    k = new.k
    for x, y in zip(left, right):
        if new.copy.get(x) != y:
            return False
        par, cpar = new.parent[x], new.parent[y]
        if not pos[x] < pos[y]:
            return False
        if any(pos[c] > pos[x] for c in par + cpar):
            return False
        # every new k-clique alternates with its copy
        for sub in itertools.combinations(par, k - 1):
            if not _alternate(new, sub + (x,)):
                return False
        for c in par:
            if new.queue_of(c, x) != new.queue_of(new.copy[c], y):
                return False
    return True


def diverse_children_violation(state: GameState):
    """First ``(v1, x, v2)`` with a child x of v1 right of edge v1v2 and its
    copy but ``queue(v1 x) == queue(v1 v2)``; None if there is none.

    Only edges with ``v1`` left of both ``v2`` and its own copy bind: then
    ``v1 < w1 < v2 < w2`` and ``v1 x`` would enclose the copy edge ``w1 w2``.
    Read literally the condition also covers the mirrored edge, which no
    nesting argument forces.
    """
    pos = state.pos
    adj = state.adjacency()
    for x in state.order:
        par = state.parent.get(x)
        if not par:
            continue
        for v1 in par:
            q = state.queue_of(v1, x)
            w1 = state.copy[v1]
            if pos[w1] < pos[v1]:
                continue
            for v2 in adj[v1]:
                if v2 == x or pos[v2] < pos[v1] or state.queue_of(v1, v2) != q:
                    continue
                w2 = state.copy[v2]
                if pos[x] > max(pos[v1], pos[v2], pos[w1], pos[w2]):
                    return (v1, x, v2)
    return None


def all_violations(prev: GameState, move: AliceMove, new: GameState, config: GameConfig):
    """Condition 1 result plus the structural failure, for diagnostics."""
    return layout_violation(new, config.ell), structural_violation(prev, move, new, config)
