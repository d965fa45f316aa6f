"""JSON for game artifacts: states, win trees and counter layouts.

Win trees store the full state only at the roots; every other state is
rebuilt by replaying Alice's move and Bob's reply, so documents stay small
and a parsed tree can be re-verified from scratch.
"""

from __future__ import annotations

from typing import Dict, List, Union

from ..errors import ParseError
from ..graph import edge
from ..io import SCHEMA, edge_key, parse_edge_key
from ..layout import LocalityViolation, RainbowViolation
from .engine import CounterLayout, LeafCertificate, WinNode, WinTree
from .state import AliceMove, BobMove, GameConfig, GameState, RoundRecord, apply_move

STAT_KEYS = ("nodes", "replies", "leaves", "candidates")


def config_to_json(c: GameConfig) -> dict:
    return {"k": c.k, "ell": c.ell, "level": c.level, "max_rounds": c.max_rounds, "max_vertices": c.max_vertices}


def config_from_json(obj: dict) -> GameConfig:
    return GameConfig(obj["k"], obj["ell"], obj["level"], obj["max_rounds"], obj["max_vertices"])


def state_to_json(s: GameState) -> dict:
    out = {
        "k": s.k,
        "paired": s.paired,
        "order": list(s.order),
        "queues": {edge_key(e): s.assign[e] for e in sorted(s.assign)},
        "parent": {str(v): list(p) for v, p in sorted(s.parent.items())},
        "initial": list(s.initial),
        "rounds": [
            {"clique": list(r.clique), "m": r.m, "children": list(r.children),
             "copy_clique": list(r.copy_clique), "copy_children": list(r.copy_children)}
            for r in s.rounds
        ],
    }
    if s.paired:
        out["copy"] = {str(v): w for v, w in sorted(s.copy.items())}
        out["side"] = {str(v): x for v, x in sorted(s.side.items())}
    return out


def state_from_json(obj: dict) -> GameState:
    rounds = [
        RoundRecord(tuple(r["clique"]), r["m"], tuple(r["children"]),
                    tuple(r.get("copy_clique", ())), tuple(r.get("copy_children", ())))
        for r in obj["rounds"]
    ]
    return GameState(
        obj["k"],
        obj["paired"],
        obj["order"],
        {parse_edge_key(k): q for k, q in obj["queues"].items()},
        {int(v): tuple(p) for v, p in obj["parent"].items()},
        obj["initial"],
        rounds,
        {int(v): w for v, w in obj.get("copy", {}).items()},
        {int(v): x for v, x in obj.get("side", {}).items()},
    )


def violation_to_json(v: Union[RainbowViolation, LocalityViolation]) -> dict:
    if isinstance(v, RainbowViolation):
        return {"type": "rainbow", "edges": [list(e) for e in v.edges], "queue": v.queue}
    return {"type": "locality", "vertex": v.vertex, "queues": sorted(v.queues), "bound": v.bound}


def violation_from_json(obj: dict):
    if obj["type"] == "rainbow":
        e, f = (edge(*x) for x in obj["edges"])
        return RainbowViolation((e, f), obj["queue"])
    if obj["type"] == "locality":
        return LocalityViolation(obj["vertex"], frozenset(obj["queues"]), obj["bound"])
    raise ParseError(f"unknown violation type {obj['type']!r}")


def _bob(bm: BobMove) -> dict:
    return {"positions": list(bm.positions), "queues": list(bm.queues)}


def _bob_from(obj: dict) -> BobMove:
    return BobMove(tuple(obj["positions"]), tuple(obj["queues"]))


def _node_to_json(node: WinNode, pruned: bool) -> dict:
    out: Dict = {"move": {"clique": list(node.move.clique), "m": node.move.m}}
    if node.is_leaf:
        refs = node.certificate.refutations if node.certificate else []
        out["refutations"] = node.notes.get("refutations", len(refs))
        shown = refs[:1] if pruned else refs
        out["certificate"] = [{"reply": _bob(bm), "violation": violation_to_json(v)} for bm, v in shown]
    else:
        out["children"] = [
            dict(reply=_bob(bm), **_node_to_json(child, pruned)) for bm, child in zip(node.replies, node.children)
        ]
    return out


def wintree_to_json(tree: WinTree, pruned: bool = True) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "wintree",
        "config": config_to_json(tree.config),
        "strategy": tree.strategy,
        "pruned": pruned,
        "stats": {k: tree.stats[k] for k in STAT_KEYS if k in tree.stats},
        "depth": tree.depth(),
        "roots": [dict(state=state_to_json(r.state), **_node_to_json(r, pruned)) for r in tree.roots],
    }


def _node_from_json(state: GameState, obj: dict) -> WinNode:
    mv = AliceMove(tuple(obj["move"]["clique"]), obj["move"]["m"])
    node = WinNode(state, mv)
    if "certificate" in obj:
        node.certificate = LeafCertificate(
            [(_bob_from(c["reply"]), violation_from_json(c["violation"])) for c in obj["certificate"]]
        )
        node.notes["refutations"] = obj["refutations"]
        return node
    for c in obj["children"]:
        bm = _bob_from(c["reply"])
        node.replies.append(bm)
        node.children.append(_node_from_json(apply_move(state, mv, bm), c))
    return node


def wintree_from_json(obj: dict) -> WinTree:
    if obj.get("schema") != SCHEMA or obj.get("kind") != "wintree":
        raise ParseError("not a queuelay/1 win tree")
    try:
        roots = [_node_from_json(state_from_json(r["state"]), r) for r in obj["roots"]]
        return WinTree(config_from_json(obj["config"]), obj["strategy"], roots, dict(obj["stats"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"win tree: malformed document ({exc})") from None


def counter_to_json(c: CounterLayout) -> dict:
    start = c.history[0][0] if c.history else c.final
    return {
        "schema": SCHEMA,
        "kind": "counter-layout",
        "config": config_to_json(c.config),
        "strategy": c.strategy,
        "start": state_to_json(start),
        "history": [{"move": {"clique": list(mv.clique), "m": mv.m}, "reply": _bob(bm)} for _, mv, bm in c.history],
        "final": state_to_json(c.final),
    }


def counter_from_json(obj: dict) -> CounterLayout:
    if obj.get("schema") != SCHEMA or obj.get("kind") != "counter-layout":
        raise ParseError("not a queuelay/1 counter layout")
    try:
        state = state_from_json(obj["start"])
        history: List = []
        for h in obj["history"]:
            mv = AliceMove(tuple(h["move"]["clique"]), h["move"]["m"])
            bm = _bob_from(h["reply"])
            history.append((state, mv, bm))
            state = apply_move(state, mv, bm)
        final = state_from_json(obj["final"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"counter layout: malformed document ({exc})") from None
    if final.key() != state.key():
        raise ParseError("counter layout: final state does not match the replayed history")
    return CounterLayout(config_from_json(obj["config"]), obj["strategy"], history, final)
