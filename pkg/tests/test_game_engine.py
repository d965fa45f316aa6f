import json

import pytest

from queuelay.errors import BudgetExceeded, ConfigMismatch
from queuelay.game import (
    BobMove,
    CounterLayout,
    GameConfig,
    OneChildStrategy,
    WinTree,
    apply_move,
    counter_from_json,
    counter_to_json,
    fig3_strategy,
    game7_strategy,
    initial_states,
    layout_violation,
    structural_candidates,
    verify_alice_wins,
    wintree_from_json,
    wintree_to_json,
)
from queuelay.layout import LocalityViolation, RainbowViolation, validate_layout


@pytest.fixture(scope="module")
def fig3_tree():
    s = fig3_strategy()
    return s, verify_alice_wins(s, GameConfig(2, 2, 5))


def test_fig3_alice_wins(fig3_tree):
    s, tree = fig3_tree
    assert isinstance(tree, WinTree)
    leaves = tree.leaves()
    assert leaves and all(n.certificate.verify(n.state, n.move, tree.config) for n in leaves)
    assert sum(len(n.certificate.refutations) for n in leaves) == tree.stats["candidates"]


def test_fig3_main_line_is_forced(fig3_tree):
    s, tree = fig3_tree
    main = [n for n in tree.nodes() if s.escape(n.state) is None]
    assert [n.state.round for n in main] == [0, 1, 2, 3, 4]
    for n in main:
        assert sum(s.escape(apply_move(n.state, n.move, b)) is None for b in n.replies) <= 1
    # after round 4 Bob has no reply that keeps the child edges out of the parent queue
    last = main[-1]
    assert last.move.clique == (2, 5)
    assert last.replies == [BobMove((6,), (1, 0))]
    assert s.escape(apply_move(last.state, last.move, last.replies[0])) is not None


def _main_node(s, tree, r):
    return next(n for n in tree.nodes() if s.escape(n.state) is None and n.state.round == r)


def test_fig3_round4_blocked_by_rainbow(fig3_tree):
    s, tree = fig3_tree
    n = _main_node(s, tree, 4)
    for bm in structural_candidates(n.state, tree.config, n.move):
        new = apply_move(n.state, n.move, bm)
        if bm.queues[0] == 2:
            assert layout_violation(new, 2) == RainbowViolation(((2, 6), (3, 4)), 2)


def test_fig3_round3_left_placement_refuted(fig3_tree):
    s, tree = fig3_tree
    n = _main_node(s, tree, 3)
    assert n.move.clique == (2, 3)
    for q in ((1, 0), (1, 2), (1, 3)):
        new = apply_move(n.state, n.move, BobMove((4,), q))
        assert layout_violation(new, 2) == RainbowViolation(((0, 4), (2, 5)), 1)
    # the one left placement that survives is an escape
    legal = [b for b in n.replies if b.positions == (4,)]
    assert legal == [BobMove((4,), (2, 0))]
    assert s.escape(apply_move(n.state, n.move, legal[0])) is not None


def test_fig3_wrong_config():
    with pytest.raises(ConfigMismatch):
        fig3_strategy().check_config(GameConfig(2, 2, 4))


@pytest.mark.parametrize("k,ell", [(2, 2), (3, 2), (3, 3)])
def test_game7_refuted_by_locality_at_v(k, ell):
    s = game7_strategy(k, ell)
    tree = verify_alice_wins(s, GameConfig(k, ell, 7))
    assert isinstance(tree, WinTree)
    for leaf in tree.leaves():
        v = s.v(leaf.state)
        refs = leaf.certificate.refutations
        assert refs and all(isinstance(w, LocalityViolation) and w.vertex == v and w.bound == ell for _, w in refs)
        assert leaf.certificate.verify(leaf.state, leaf.move, tree.config)


def test_game7_ell_above_k():
    with pytest.raises(ConfigMismatch):
        game7_strategy(2, 3)


def test_one_child_counter_layout():
    res = verify_alice_wins(OneChildStrategy(), GameConfig(2, 2, 1))
    assert isinstance(res, CounterLayout) and res.verify()
    g, ids = res.final.graph()
    assert ids == {v: v for v in ids}
    assert validate_layout(g, res.final.layout(), 2).ok
    back = counter_from_json(json.loads(json.dumps(counter_to_json(res))))
    assert json.dumps(counter_to_json(back)) == json.dumps(counter_to_json(res))


def test_forged_counter_fails_verify(fig3_tree):
    s, tree = fig3_tree
    n = _main_node(s, tree, 4)
    bad = BobMove((6,), (2, 0))
    new = apply_move(n.state, n.move, bad)
    assert not CounterLayout(tree.config, s.name, [(n.state, n.move, bad)], new).verify()
    good = n.replies[0]
    after = apply_move(n.state, n.move, good)
    assert CounterLayout(tree.config, s.name, [(n.state, n.move, good)], after).verify()


@pytest.mark.parametrize("pruned", [True, False])
def test_wintree_round_trip(fig3_tree, pruned):
    _, tree = fig3_tree
    doc = wintree_to_json(tree, pruned)
    text = json.dumps(doc, sort_keys=True)
    back = wintree_from_json(json.loads(text))
    assert json.dumps(wintree_to_json(back, pruned), sort_keys=True) == text
    assert back.depth() == tree.depth()
    assert all(n.certificate.verify(n.state, n.move, back.config) for n in back.leaves())


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        verify_alice_wins(fig3_strategy(), GameConfig(2, 2, 5), node_budget=5)
    with pytest.raises(BudgetExceeded):
        verify_alice_wins(fig3_strategy(), GameConfig(2, 2, 5, max_rounds=3))


def test_initial_states_cover_all_clique_layouts():
    # k = 3: 1 order, queue assignments with locality <= 2 up to relabelling
    for k in (2, 3):
        sts = initial_states(GameConfig(k, 2, 5))
        assert sts and all(layout_violation(s, 2) is None for s in sts)
        assert len({s.key() for s in sts}) == len(sts)
