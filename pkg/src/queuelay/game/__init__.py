"""Alice/Bob construction games."""

from .assemble import LowerBoundInstance, assemble_lower_bound, lifted_fig3
from .certificates import NonNestingWitness, edge_children, halfclique_nonnesting, lemma4_analyze
from .conditions import diverse_children_violation, layout_violation, structural_violation
from .engine import (
    CounterLayout,
    LeafCertificate,
    ScriptStrategy,
    Strategy,
    WinNode,
    WinTree,
    certify_leaf,
    verify_alice_wins,
)
from .lifts import lift_iii_to_ii, lift_iv_to_iii, lift_v_to_iv, lift_vi_to_v, lift_vii_to_vi, play_random
from .moves import legal_bob_moves, naive_bob_moves, random_bob_move, structural_candidates
from .serialize import counter_from_json, counter_to_json, wintree_from_json, wintree_to_json
from .state import AliceMove, BobMove, GameConfig, GameState, apply_move, initial_states, parse_level
from .strategies import Fig3Strategy, Game7Strategy, OneChildStrategy, fig3_strategy, game7_strategy

__all__ = [
    "AliceMove", "BobMove", "CounterLayout", "Fig3Strategy", "Game7Strategy", "GameConfig", "GameState",
    "LeafCertificate", "LowerBoundInstance", "NonNestingWitness", "OneChildStrategy", "ScriptStrategy",
    "Strategy", "WinNode", "WinTree", "apply_move", "assemble_lower_bound", "certify_leaf",
    "counter_from_json", "counter_to_json", "diverse_children_violation", "edge_children", "fig3_strategy",
    "game7_strategy", "halfclique_nonnesting", "initial_states", "layout_violation", "legal_bob_moves",
    "lemma4_analyze", "lift_iii_to_ii", "lift_iv_to_iii", "lift_v_to_iv", "lift_vi_to_v", "lift_vii_to_vi",
    "lifted_fig3", "naive_bob_moves", "parse_level", "play_random", "random_bob_move", "structural_candidates",
    "structural_violation", "verify_alice_wins", "wintree_from_json", "wintree_to_json",
]
