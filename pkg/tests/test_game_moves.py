import itertools
import random

import pytest

from queuelay.errors import ConfigMismatch, InvalidAliceMove
from queuelay.game import (
    AliceMove,
    CounterLayout,
    GameConfig,
    apply_move,
    initial_states,
    layout_violation,
    legal_bob_moves,
    naive_bob_moves,
    random_bob_move,
    structural_violation,
    verify_alice_wins,
)
from queuelay.game.engine import Strategy


def left_cliques(state):
    verts = [v for v in state.order if not state.paired or state.side[v] == 0]
    return [c for c in itertools.combinations(verts, state.k) if state.k == 1 or state.is_clique(c)]


def sample_states(config, rng, count, max_n, max_m):
    """(state, move) pairs reached by random Alice moves and random legal replies."""
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        state = rng.choice(initial_states(config))
        for _ in range(rng.randint(0, 3)):
            mv = AliceMove(rng.choice(left_cliques(state)), 1)
            if state.n + (2 if state.paired else 1) > max_n:
                break
            bm = random_bob_move(state, config, mv, rng)
            if bm is None:
                break
            state = apply_move(state, mv, bm)
        m = rng.randint(1, max_m)
        if state.n + m * (2 if state.paired else 1) > max_n:
            continue
        out.append((state, AliceMove(rng.choice(left_cliques(state)), m)))
    return out


CASES = [(2, 2, lvl, 2) for lvl in range(1, 6)] + [(2, 2, 6, 1), (2, 2, 7, 1), (2, 1, 3, 2), (3, 2, 5, 1),
                                                    (3, 3, 5, 1), (3, 2, 7, 1)]


@pytest.mark.parametrize("k,ell,level,max_m", CASES)
def test_fast_enumerator_matches_naive(k, ell, level, max_m):
    config = GameConfig(k, ell, level)
    rng = random.Random(1000 * level + 10 * k + ell)
    # paired k = 3 states have eight vertices after one round; naive is slow there
    count = 2 if k == 3 and level >= 6 else 6
    for state, mv in sample_states(config, rng, count, 8, max_m):
        fast = set(legal_bob_moves(state, config, mv))
        naive = set(naive_bob_moves(state, config, mv))
        assert fast == naive, (state, mv)


def test_every_reply_passes_the_standalone_checks():
    config = GameConfig(2, 2, 5)
    rng = random.Random(3)
    for state, mv in sample_states(config, rng, 10, 9, 2):
        for bm in legal_bob_moves(state, config, mv):
            new = apply_move(state, mv, bm)
            assert layout_violation(new, 2) is None
            assert structural_violation(state, mv, new, config) is None


def test_level_v_with_ell_equal_k_reuses_existing_queues():
    config = GameConfig(2, 2, 5)
    for st in initial_states(config):
        mv = AliceMove(tuple(st.initial), 1)
        for bm in legal_bob_moves(st, config, mv):
            new = apply_move(st, mv, bm)
            x = new.rounds[-1].children[0]
            qs = [new.queue_of(c, x) for c in new.parent[x]]
            assert len(set(qs)) == 2


def test_level_i_single_child_all_gaps():
    config = GameConfig(2, 2, 1)
    st = initial_states(config)[0]  # one edge, queue 0
    moves = legal_bob_moves(st, config, AliceMove(tuple(st.initial), 1))
    gaps = {bm.positions for bm in moves}
    assert gaps == {(0,), (1,), (2,)}
    # per gap: queue pairs over {0, fresh} with locality <= 2
    assert len(moves) == len(naive_bob_moves(st, config, AliceMove(tuple(st.initial), 1)))


def test_level_iii_children_are_consecutive():
    config = GameConfig(2, 2, 3)
    st = initial_states(config)[0]
    mv = AliceMove(tuple(st.initial), 1)
    st = apply_move(st, mv, legal_bob_moves(st, config, mv)[0])
    mv = AliceMove(tuple(st.initial), 2)
    for bm in legal_bob_moves(st, config, mv):
        assert abs(bm.positions[0] - bm.positions[1]) == 1


def test_invalid_alice_move():
    st = initial_states(GameConfig(2, 2, 5))[0]
    with pytest.raises(InvalidAliceMove):
        legal_bob_moves(st, GameConfig(2, 2, 5), AliceMove((0, 0), 1))
    with pytest.raises(InvalidAliceMove):
        legal_bob_moves(st, GameConfig(2, 2, 5), AliceMove(tuple(st.initial), 0))


def test_config_rejects_ell_above_k():
    with pytest.raises(ConfigMismatch):
        GameConfig(2, 3, 5)


class RandomScript(Strategy):
    """Random but state-determined Alice: the clique is picked by a hash of
    the round, so every level sees the same choices."""

    name = "random-script"

    def __init__(self, seed, rounds, m):
        self.seed, self.rounds, self.m = seed, rounds, m

    def next_move(self, state):
        if state.round >= self.rounds:
            return None
        cl = left_cliques(state)
        rng = random.Random(self.seed * 31 + state.round)
        return AliceMove(rng.choice(cl), rng.randint(1, self.m))


@pytest.mark.parametrize("seed", range(8))
def test_monotone_hardness(seed):
    """A counter layout at level n + 1 is one at level n too."""
    for level in range(5, 1, -1):
        config = GameConfig(2, 2, level, max_rounds=3, max_vertices=9)
        res = verify_alice_wins(RandomScript(seed, 2, 2), config, certify=False, node_budget=50_000)
        if not isinstance(res, CounterLayout):
            continue
        for lower in range(1, level):
            c = CounterLayout(GameConfig(2, 2, lower, 3, 9), res.strategy, res.history, res.final)
            assert c.verify()
