"""Alice strategies for the base games."""

from __future__ import annotations

import json
from importlib import resources
from typing import List, Optional, Sequence, Tuple

from ..errors import ConfigMismatch
from ..graph import FIG3_PARENTS, edge
from .engine import Strategy, resolve
from .state import AliceMove, GameConfig, GameState


def _fig3_labels():
    """Witness parents as structural labels: 1, 2 initial, r+2 the child of round r."""

    def lab(v):
        return ("i", v - 1) if v <= 2 else ("r", v - 2, 0)

    return [tuple(lab(p) for p in FIG3_PARENTS[v]) for v in sorted(FIG3_PARENTS)]


def load_refuter() -> List[Tuple[int, int]]:
    """Parent pairs of the bundled two-queue refuter, in local labels:
    0 and 1 are the root edge by rank, 2+j the child of refuter round j."""
    text = resources.files("queuelay.data").joinpath("refuter.json").read_text()
    return [tuple(p) for p in json.loads(text)["parents"]]


class Fig3Strategy(Strategy):
    """Five single-child rounds along the seven-vertex witness 2-tree.

    If Bob ever puts a child edge into the queue of its parent edge, the
    other child edge e' has both ends saturated with the same two queues;
    Alice then abandons the script and grows the refuter 2-tree on e'.
    """

    name = "fig3"

    def __init__(self, refuter: Optional[Sequence[Tuple[int, int]]] = None):
        self.script = _fig3_labels()
        self.refuter = list(refuter) if refuter is not None else load_refuter()

    @staticmethod
    def check_config(config: GameConfig):
        if (config.k, config.ell, config.level) != (2, 2, 5):
            raise ConfigMismatch("fig3 strategy is for k = ell = 2 at level v")

    def escape(self, state: GameState) -> Optional[Tuple[int, Tuple[int, int]]]:
        """First scripted round whose child edge reuses the parent queue,
        with the other child edge."""
        for r in range(1, min(state.round, len(self.script)) + 1):
            rec = state.rounds[r - 1]
            a, b = rec.clique
            x = rec.children[0]
            q = state.queue_of(a, b)
            if state.queue_of(a, x) == q:
                return r, edge(b, x)
            if state.queue_of(b, x) == q:
                return r, edge(a, x)
        return None

    def demands(self, n0):
        # an escape after the last scripted round still plays the whole refuter
        return [1] * (len(self.script) + len(self.refuter))

    def next_move(self, state):
        esc = self.escape(state)
        if esc is None:
            r = state.round
            if r >= len(self.script):
                return None
            return AliceMove(tuple(resolve(state, lab) for lab in self.script[r]), 1)
        r0, root = esc
        local = list(state.sorted_by_rank(root))
        done = state.round - r0
        for j in range(done):
            local.append(state.rounds[r0 + j].children[0])
        if done >= len(self.refuter):
            return None
        i, j = self.refuter[done]
        return AliceMove((local[i], local[j]), 1)


class Game7Strategy(Strategy):
    """ell single-child rounds on cliques through v (leftmost initial vertex)."""

    name = "game7"

    def __init__(self, k: int, ell: int):
        if ell > k or k < 2:
            raise ConfigMismatch("game7 strategy needs 2 <= k and ell <= k")
        self.k, self.ell = k, ell

    def focus(self, state):
        return self.v(state)

    def v(self, state):
        left = [u for u in state.initial if state.side[u] == 0]
        return state.sorted_by_rank(left)[0]

    def clique(self, state, i):
        """C_i; C_1 is the left initial clique."""
        v = self.v(state)
        c = [u for u in state.initial if state.side[u] == 0]
        for j in range(1, i):
            x = state.rounds[j - 1].children[0]
            drop = [u for u in state.sorted_by_rank(c) if u != v][0]
            c = [u for u in c if u != drop] + [x]
        return tuple(c)

    def demands(self, n0):
        return [1] * self.ell

    def next_move(self, state):
        if not state.paired:
            raise ConfigMismatch("game7 strategy plays paired games")
        if state.round >= self.ell:
            return None
        return AliceMove(self.clique(state, state.round + 1), 1)


class OneChildStrategy(Strategy):
    """Adds a single child to the initial clique once; Bob always survives."""

    name = "one-child"

    def demands(self, n0):
        return [1]

    def next_move(self, state):
        if state.round >= 1:
            return None
        init = [u for u in state.initial if not state.paired or state.side[u] == 0]
        return AliceMove(tuple(init), 1)


def fig3_strategy() -> Fig3Strategy:
    return Fig3Strategy()


def game7_strategy(k: int, ell: int) -> Game7Strategy:
    return Game7Strategy(k, ell)
