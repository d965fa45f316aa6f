"""Strategy lifting: a win in a more restricted game becomes a win in a
less restricted one.

Each lift keeps a *virtual* state for the wrapped strategy.  The virtual
state holds the real vertex ids but only the children the lift decided to
keep, so the wrapped strategy sees an ordinary game of its own level.
Virtual states are recomputed from the real history on every call, which
keeps strategies pure functions of the state.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

from ..errors import BobDeviation, CopyDivergence, PigeonholeFailure
from ..graph import edge
from ..layout import RainbowViolation, find_nesting_pair
from .conditions import diverse_children_violation
from .engine import Strategy
from .moves import random_bob_move
from .state import AliceMove, GameConfig, GameState, RoundRecord, apply_move, initial_states


def _restrict(real: GameState, keep, rounds, initial=None, copy=None, side=None, paired=False) -> GameState:
    keep = set(keep)
    order = [v for v in real.order if v in keep]
    assign = {e: q for e, q in real.assign.items() if e[0] in keep and e[1] in keep}
    init = tuple(initial) if initial is not None else real.initial
    parent = {x: real.parent[x] for x in keep if x in real.parent and x not in init}
    return GameState(real.k, paired or real.paired, order, assign, parent, init, rounds,
                     copy if copy is not None else real.copy, side if side is not None else real.side)


def _witness(real: GameState, edges) -> Optional[RainbowViolation]:
    """Same-queue nesting pair among ``edges`` (then anywhere) in Bob's layout."""
    lay = real.layout()
    es = [e for e in edges if e in real.assign]
    hit = find_nesting_pair(lay, es)
    return hit if hit is not None else find_nesting_pair(lay)


class _SelectLift(Strategy):
    """Plays inflated rounds and keeps a subset of each round's children."""

    def __init__(self, inner: Strategy):
        self.inner = inner
        self.counters: Dict = {"rounds": 0}
        self.log: List[Dict] = []

    def focus(self, state):
        return self.inner.focus(self.virtual(state))

    def inflate(self, n: int, m: int) -> int:
        """Children actually added when the inner strategy asks for ``m``
        and the real graph has ``n`` vertices."""
        raise NotImplementedError

    def demands(self, n0: int) -> List[int]:
        out, n = [], n0
        for m in self.inner.demands(n0):
            out.append(self.inflate(n, m))
            n += out[-1]
        return out

    def select(self, real: GameState, r: int, mv: AliceMove, fresh: bool) -> Tuple[int, ...]:
        raise NotImplementedError

    def audit(self, real: GameState, vs_before: GameState, vs_after: GameState, r: int):
        """Hook checking what the wrapped game takes for granted."""

    def virtual(self, real: GameState) -> GameState:
        vs = _restrict(real, real.initial, ())
        kept = list(real.initial)
        for r, rec in enumerate(real.rounds):
            mv = self.inner.next_move(vs)
            if mv is None:
                break
            fresh = r == real.round - 1
            chosen = self.select(real, r, mv, fresh)
            kept.extend(chosen)
            nxt = _restrict(real, kept, vs.rounds + (RoundRecord(mv.clique, mv.m, tuple(chosen)),))
            if fresh:
                self.counters["rounds"] += 1
                self.audit(real, vs, nxt, r)
            vs = nxt
        return vs

    def next_move(self, real):
        vs = self.virtual(real)
        mv = self.inner.next_move(vs)
        if mv is None:
            return None
        return AliceMove(mv.clique, self.inflate(real.n, mv.m))


class LiftVtoIV(_SelectLift):
    """m+2 twins per round; the outermost two by rank are reserved, the
    middle m are played."""

    name = "v->iv"

    def inflate(self, n, m):
        return m + 2

    def select(self, real, r, mv, fresh):
        kids = real.rounds[r].children
        if fresh:
            self.log.append({"round": r + 1, "reserved": (kids[0], kids[-1]), "kept": kids[1:-1]})
        return tuple(kids[1:-1])

    def audit(self, real, before, after, r):
        rec = after.rounds[-1]
        pos = real.pos
        twins = real.rounds[r].children
        par = real.parent[twins[0]]
        for x in rec.children:
            right = all(pos[c] < pos[x] for c in par)
            qs = [real.queue_of(c, x) for c in par]
            if right and len(set(qs)) == len(qs):
                continue
            # the reserved twins of the rounds that created the clique, plus this round
            pool = [edge(c, y) for y in twins for c in par]
            for c in par:
                if c in real.parent:
                    src = next(rr for rr in real.rounds if c in rr.children)
                    pool += [edge(p, y) for y in src.children for p in real.parent[c]]
            w = _witness(real, pool)
            raise BobDeviation(f"child {x} of round {r + 1} breaks the forced right placement", w)


class LiftIVtoIII(_SelectLift):
    """m * ell^k twins; keep m with the same queue class."""

    name = "iv->iii"

    def __init__(self, inner, k: int, ell: int):
        super().__init__(inner)
        self.k, self.ell = k, ell
        self.counters.update(max_classes=0, class_bound=ell**k)

    def inflate(self, n, m):
        return m * self.ell**self.k

    def select(self, real, r, mv, fresh):
        kids = real.rounds[r].children
        par = real.parent[kids[0]]
        classes: Dict[Tuple[int, ...], List[int]] = {}
        for x in kids:
            classes.setdefault(tuple(real.queue_of(c, x) for c in par), []).append(x)
        if fresh:
            self.counters["max_classes"] = max(self.counters["max_classes"], len(classes))
            if len(classes) > self.ell**self.k:
                raise PigeonholeFailure(f"{len(classes)} queue classes exceed ell^k = {self.ell ** self.k}")
        best = max(classes.values(), key=len)
        if len(best) < mv.m:
            raise PigeonholeFailure("no queue class holds enough twins")
        return tuple(best[: mv.m])


class LiftIIItoII(_SelectLift):
    """(m+1)|V(G_{r-1})| twins; keep m consecutive ones from one gap."""

    name = "iii->ii"

    def __init__(self, inner):
        super().__init__(inner)
        self.counters.update(failures=0, min_slack=None)

    def inflate(self, n, m):
        return (m + 1) * n

    def select(self, real, r, mv, fresh):
        kids = real.rounds[r].children
        old = set(real.initial)
        for rr in real.rounds[:r]:
            old.update(rr.children)
        kid_set = set(kids)
        runs: List[List[int]] = [[]]
        for v in real.order:
            if v in old:
                runs.append([])
            elif v in kid_set:
                runs[-1].append(v)
        best = max(runs, key=len)
        if fresh:
            slack = len(best) - mv.m
            ms = self.counters["min_slack"]
            self.counters["min_slack"] = slack if ms is None else min(ms, slack)
        if len(best) < mv.m:
            self.counters["failures"] += 1
            raise PigeonholeFailure("no gap holds enough twins")
        return tuple(best[: mv.m])


class LiftVIItoVI(Strategy):
    """Same moves; condition (vii) is checked and, when broken, refuted by
    the copy edge nested below ``v1 x``."""

    name = "vii->vi"

    def __init__(self, inner: Strategy):
        self.inner = inner
        self.counters = {"rounds": 0}

    def focus(self, state):
        return self.inner.focus(state)

    def demands(self, n0):
        return self.inner.demands(n0)

    def audit(self, real: GameState):
        bad = diverse_children_violation(real)
        if bad is None:
            return
        v1, x, v2 = bad
        w1, w2 = real.copy[v1], real.copy[v2]
        w = RainbowViolation((edge(v1, x), edge(w1, w2)), real.queue_of(v1, x))
        raise BobDeviation(f"child {x} of {v1} reuses the queue of {v1}-{v2}", w)

    def next_move(self, state):
        if state.round:
            self.counters["rounds"] += 1
            self.audit(state)
        return self.inner.next_move(state)


class LiftVItoV(Strategy):
    """Clique cloning, then the paired game on two queue-isomorphic clones.

    Clone j gets vertices v_1..v_k, v_i with parent clique
    ``c_i..c_k, v_1..v_{i-1}``.  Clones are added lazily until two share
    their queue class; more than (k^2)^(k^2) clones force that.  Each
    virtual round of the paired game is two real rounds (left, then copy).
    """

    name = "vi->v"

    def __init__(self, inner: Strategy, k: int):
        self.inner = inner
        self.k = k
        self.bound = (k * k) ** (k * k)
        self.counters = {"clones": 0, "pair": None, "classes": 0}

    def focus(self, state):
        return None

    def _gadget(self, real: GameState):
        """(clones, pair, rounds used); pair is None while still cloning."""
        k = self.k
        init = real.sorted_by_rank(real.initial)
        clones: List[List[int]] = []
        seen: Dict[Tuple[int, ...], int] = {}
        r = 0
        while r + k <= real.round:
            verts = [real.rounds[r + i].children[0] for i in range(k)]
            r += k
            cls = tuple(
                real.queue_of(p, v)
                for i, v in enumerate(verts)
                for p in list(init[i:]) + verts[:i]
            )
            clones.append(verts)
            if cls in seen:
                self.counters.update(clones=len(clones), classes=len(seen))
                return clones, (clones[seen[cls]], verts), r
            seen[cls] = len(clones) - 1
        if len(clones) > self.bound:
            raise PigeonholeFailure("more than (k^2)^(k^2) clones without a repeat")
        return clones, None, r

    def _alternation(self, real, cv, cw):
        """Check v_1 < w_1 < v_2 < ... with a witness for the first failure."""
        pos = real.pos
        k = self.k
        for i in range(k - 1):
            vi, wi, vn, wn = cv[i], cw[i], cv[i + 1], cw[i + 1]
            if pos[vn] < pos[wi]:
                # v_i v_{i+1} nests below the edges from w_i to its parents
                pool = [edge(vi, vn)] + [edge(p, wi) for p in real.parent[wi]]
                raise BobDeviation("alternation broken: v_{i+1} left of w_i", _witness(real, pool))
            if pos[wn] < pos[vn]:
                pool = [edge(vi, vn), edge(wi, wn)]
                raise BobDeviation("alternation broken: w_{i+1} left of v_{i+1}", _witness(real, pool))

    def _paired_state(self, real, cv, cw, r0):
        """Virtual paired state after the real rounds r0.. (complete pairs)."""
        init = real.sorted_by_rank(cv + cw)
        copy = {**dict(zip(cv, cw)), **dict(zip(cw, cv))}
        side = {**{v: 0 for v in cv}, **{w: 1 for w in cw}}
        vs = _restrict(real, init, (), initial=init, copy=copy, side=side, paired=True)
        keep = list(init)
        r = r0
        while r + 2 <= real.round:
            mv = self.inner.next_move(vs)
            if mv is None:
                break
            a, b = real.rounds[r], real.rounds[r + 1]
            xs = list(a.children)
            ys = list(b.children)
            for x, y in zip(xs, ys):
                copy[x], copy[y] = y, x
                side[x], side[y] = 0, 1
            keep += xs + ys
            rec = RoundRecord(mv.clique, mv.m, tuple(xs), tuple(copy[c] for c in mv.clique), tuple(ys))
            nxt = _restrict(real, keep, vs.rounds + (rec,), initial=init, copy=dict(copy), side=dict(side), paired=True)
            self._check_copies(real, nxt, xs, ys, r)
            vs = nxt
            r += 2
        return vs, r

    def _check_copies(self, real, vs, xs, ys, r):
        pos = real.pos
        for x, y in zip(xs, ys):
            for c in real.parent[x]:
                if real.queue_of(c, x) != real.queue_of(vs.copy[c], y):
                    raise CopyDivergence(
                        f"round {r + 1}: edge {c}-{x} and its copy use different queues; "
                        "restoring copies needs whole-graph cloning beyond the caps"
                    )
            par = real.parent[x] + real.parent[y]
            if not (pos[x] < pos[y] and all(pos[c] < pos[x] for c in par)):
                pool = [edge(c, x) for c in real.parent[x]] + [edge(c, y) for c in real.parent[y]]
                for c in real.parent[y]:
                    pool += [edge(p, c) for p in real.parent.get(c, ())]
                raise BobDeviation(f"round {r + 1}: children not in parent-clique order", _witness(real, pool))

    def demands(self, n0):
        # worst case: bound + 1 clones of k single-child rounds, then each
        # paired round twice
        gadget = [1] * (self.k * (self.bound + 1))
        return gadget + [m for m in self.inner.demands(2 * n0) for _ in (0, 1)]

    def next_move(self, real):
        init = real.sorted_by_rank(real.initial)
        clones, pair, r0 = self._gadget(real)
        if pair is None:
            done = real.round - r0
            verts = [real.rounds[r0 + i].children[0] for i in range(done)]
            return AliceMove(tuple(init[done:]) + tuple(verts), 1)
        p, q = pair
        cv, cw = (p, q) if real.pos[p[0]] < real.pos[q[0]] else (q, p)
        self.counters["pair"] = (tuple(cv), tuple(cw))
        self._alternation(real, cv, cw)
        vs, r = self._paired_state(real, cv, cw, r0)
        mv = self.inner.next_move(vs)
        if mv is None:
            return None
        if r < real.round:  # left half of the pair played; now the copy
            return AliceMove(tuple(vs.copy[c] for c in mv.clique), mv.m)
        return AliceMove(mv.clique, mv.m)


def lift_v_to_iv(s: Strategy) -> LiftVtoIV:
    return LiftVtoIV(s)


def lift_iv_to_iii(s: Strategy, k: int = 2, ell: int = 2) -> LiftIVtoIII:
    return LiftIVtoIII(s, k, ell)


def lift_iii_to_ii(s: Strategy) -> LiftIIItoII:
    return LiftIIItoII(s)


def lift_vii_to_vi(s: Strategy) -> LiftVIItoVI:
    return LiftVIItoVI(s)


def lift_vi_to_v(s: Strategy, k: int = 2) -> LiftVItoV:
    return LiftVItoV(s, k)


# --------------------------------------------------------------------------
# randomised play


def play_random(strategy: Strategy, config: GameConfig, rng: random.Random, init: Optional[GameState] = None,
                max_rounds: Optional[int] = None):
    """Random Bob against ``strategy``.

    Returns ``(outcome, history, state)`` with outcome "stuck" (no reply
    found, which is not a proof) or "survived" (the script ended).
    """
    state = init if init is not None else rng.choice(initial_states(config))
    history = []
    limit = max_rounds if max_rounds is not None else config.max_rounds
    while True:
        mv = strategy.next_move(state)
        if mv is None:
            return "survived", history, state
        if state.round >= limit:
            return "capped", history, state
        bm = random_bob_move(state, config, mv, rng)
        if bm is None:
            return "stuck", history, state
        history.append((state, mv, bm))
        state = apply_move(state, mv, bm)
