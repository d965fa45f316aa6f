"""Exhaustive verification of Alice strategies against every Bob."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..errors import BudgetExceeded
from ..layout import LocalityViolation, RainbowViolation
from .conditions import layout_violation, structural_violation
from .moves import legal_bob_moves, structural_candidates
from .state import AliceMove, BobMove, GameConfig, GameState, apply_move, initial_states


class Strategy:
    """Alice's strategy: a pure function of the current state.

    ``next_move`` returns None once the script is over.
    """

    name = "strategy"

    def next_move(self, state: GameState) -> Optional[AliceMove]:
        raise NotImplementedError

    def focus(self, state: GameState) -> Optional[int]:
        """Vertex whose locality a leaf certificate should name first."""
        return None

    def demands(self, n0: int) -> List[int]:
        """Largest child count per round over all branches, starting from
        an initial clique of ``n0`` vertices."""
        raise NotImplementedError(f"{self.name} does not publish its round sizes")


class ScriptStrategy(Strategy):
    """Fixed list of moves given as (round index -> (parent labels, m)).

    Labels: ``("i", j)`` is the j-th initial vertex by rank, ``("r", r, j)``
    the j-th child of round r (1-based rounds).
    """

    def __init__(self, rounds: Sequence[Tuple[Sequence, int]], name="script"):
        self.rounds = list(rounds)
        self.name = name

    def next_move(self, state):
        r = state.round
        if r >= len(self.rounds):
            return None
        labels, m = self.rounds[r]
        return AliceMove(tuple(resolve(state, lab) for lab in labels), m)

    def demands(self, n0):
        return [m for _, m in self.rounds]


def resolve(state: GameState, label) -> int:
    """Vertex named by a structural label (see :class:`ScriptStrategy`)."""
    if label[0] == "i":
        init = [v for v in state.initial if not state.paired or state.side[v] == 0]
        return state.sorted_by_rank(init)[label[1]]
    _, r, j = label
    return state.rounds[r - 1].children[j]


@dataclass
class LeafCertificate:
    """For every structurally admissible reply, a concrete layout violation."""

    refutations: List[Tuple[BobMove, Union[RainbowViolation, LocalityViolation]]]

    def verify(self, state: GameState, move: AliceMove, config: GameConfig) -> bool:
        for bm, viol in self.refutations:
            new = apply_move(state, move, bm)
            if structural_violation(state, move, new, config) is not None:
                return False
            if not viol.verify(new.layout()):
                return False
        return True


@dataclass
class WinNode:
    state: GameState
    move: AliceMove
    replies: List[BobMove] = field(default_factory=list)
    children: List["WinNode"] = field(default_factory=list)
    certificate: Optional[LeafCertificate] = None
    notes: Dict = field(default_factory=dict)

    @property
    def is_leaf(self) -> bool:
        return not self.replies

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass
class WinTree:
    config: GameConfig
    strategy: str
    roots: List[WinNode]
    stats: Dict = field(default_factory=dict)

    def nodes(self):
        for r in self.roots:
            yield from r.walk()

    def leaves(self):
        return [n for n in self.nodes() if n.is_leaf]

    def depth(self) -> int:
        def d(n):
            return 1 + max((d(c) for c in n.children), default=0)

        return max((d(r) for r in self.roots), default=0)

    def to_json(self, pruned: bool = True) -> dict:
        from .serialize import wintree_to_json

        return wintree_to_json(self, pruned)


@dataclass
class CounterLayout:
    """A reply chain with which Bob survives the whole script."""

    config: GameConfig
    strategy: str
    history: List[Tuple[GameState, AliceMove, BobMove]]
    final: GameState

    def verify(self) -> bool:
        """Replays the chain through the standalone condition checkers."""
        for state, move, bm in self.history:
            new = apply_move(state, move, bm)
            if layout_violation(new, self.config.ell) is not None:
                return False
            if structural_violation(state, move, new, self.config) is not None:
                return False
        return layout_violation(self.final, self.config.ell) is None

    def to_json(self) -> dict:
        from .serialize import counter_to_json

        return counter_to_json(self)


def certify_leaf(state: GameState, config: GameConfig, move: AliceMove, prefer=None) -> LeafCertificate:
    refs = []
    for bm in structural_candidates(state, config, move):
        new = apply_move(state, move, bm)
        viol = layout_violation(new, config.ell, prefer=prefer)
        if viol is None:  # would be a legal reply; the enumerator disagrees
            raise AssertionError(f"reply {bm} is legal but missing from the move set")
        refs.append((bm, viol))
    return LeafCertificate(refs)


def verify_alice_wins(
    strategy: Strategy,
    config: GameConfig,
    init_layouts: Optional[List[GameState]] = None,
    node_budget: int = 200_000,
    certify: bool = True,
) -> Union[WinTree, CounterLayout]:
    """Play ``strategy`` against every canonical Bob.

    Returns a :class:`WinTree` when every reply chain ends with Bob stuck and
    a :class:`CounterLayout` otherwise.  Raises :class:`BudgetExceeded` when
    the tree outgrows ``node_budget`` nodes or the configured caps.
    """
    start = time.perf_counter()
    inits = init_layouts if init_layouts is not None else initial_states(config)
    counter = {"nodes": 0, "replies": 0, "leaves": 0, "candidates": 0}
    roots: List[WinNode] = []

    def explore(state: GameState, history) -> Union[WinNode, CounterLayout]:
        counter["nodes"] += 1
        if counter["nodes"] > node_budget:
            raise BudgetExceeded(f"more than {node_budget} game nodes", partial=roots)
        move = strategy.next_move(state)
        if move is None:
            return CounterLayout(config, strategy.name, list(history), state)
        t = move.m * (2 if state.paired else 1)
        if state.round >= config.max_rounds or state.n + t > config.max_vertices:
            raise BudgetExceeded(
                f"script exceeds caps ({config.max_rounds} rounds, {config.max_vertices} vertices)",
                partial=roots,
            )
        replies = legal_bob_moves(state, config, move)
        node = WinNode(state, move, replies)
        counter["replies"] += len(replies)
        if not replies:
            counter["leaves"] += 1
            if certify:
                node.certificate = certify_leaf(state, config, move, strategy.focus(state))
                counter["candidates"] += len(node.certificate.refutations)
            return node
        for bm in replies:
            child = explore(apply_move(state, move, bm), history + [(state, move, bm)])
            if isinstance(child, CounterLayout):
                return child
            node.children.append(child)
        return node

    for st in inits:
        res = explore(st, [])
        if isinstance(res, CounterLayout):
            return res
        roots.append(res)
    counter["seconds"] = round(time.perf_counter() - start, 3)
    return WinTree(config, strategy.name, roots, counter)
