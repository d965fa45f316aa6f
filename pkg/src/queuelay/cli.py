"""``queuelay`` command line.

Exit codes: 0 success, 1 negative result (invalid layout, UNSAT, Bob
survives), 2 usage or input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import List, Optional

from . import io
from .bounds import thm2_bounds
from .constructors import bfs_tree_layout, degeneracy_star_partition, star_queue_layout, stars_to_queues
from .errors import BudgetExceeded, ConfigMismatch, ParseError, QueuelayError, SizeOverflow, Timeout
from .graph import (
    ConstructionSequence,
    Graph,
    complete_graph,
    expand,
    fig3_witness,
    halfclique_family,
    mary_ktree,
    random_graph,
    random_ktree,
    random_tree,
)
from .layout import LinearOrder, find_nesting_pair, layout_locality, validate_layout

OK, NEGATIVE, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# input / output


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text: str, path: Optional[str]):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load_input(path: str):
    """(graph, sequence or None) from an edge list or a sequence document."""
    text = _read(path)
    if text.lstrip().startswith("{"):
        obj = json.loads(text)
        if "steps" not in obj:
            raise ParseError(f"{path}: JSON input must be a construction sequence")
        seq = io.sequence_from_json(obj)
        return expand(seq), seq
    return io.parse_graph(text), None


def _load_layout(path: str):
    return io.layout_from_json(json.loads(_read(path)))


def _emit(obj: dict, path: Optional[str]):
    _write(io.dumps(obj), path)


# --------------------------------------------------------------------------
# subcommands


def cmd_gen(a) -> int:
    seq: Optional[ConstructionSequence] = None
    g: Optional[Graph] = None
    fam = a.family
    if fam == "ktree":
        seq = random_ktree(a.k, a.n, a.seed)
    elif fam == "mary":
        seq, _ = mary_ktree(a.m, a.t)
    elif fam == "fig3":
        seq = fig3_witness()
    elif fam == "halfclique":
        seq = halfclique_family(a.k, a.s)
    elif fam == "tree":
        g = random_tree(a.n, a.seed)
    elif fam == "gnp":
        g = random_graph(a.n, a.p, a.seed)
    elif fam == "complete":
        g = complete_graph(a.n)
    elif fam == "lower-bound":
        from .game.assemble import assemble_lower_bound

        inst = assemble_lower_bound(a.kprime, a.l, a.s, _strategy(a.strategy, a.k or a.kprime, a.l)[0], k=a.k)
        _emit(inst.to_json(), a.output)
        return OK
    fmt = a.format or ("json" if seq is not None else "edges")
    if fmt == "json":
        if seq is None:
            raise UsageError(f"family {fam} has no construction sequence; use --format edges")
        _emit(io.sequence_to_json(seq), a.output)
    else:
        _write(io.emit_graph(g if g is not None else expand(seq)), a.output)
    return OK


def cmd_layout(a) -> int:
    g, seq = _load_input(a.input)
    if a.method == "star":
        if seq is None:
            raise UsageError("star layouts need a construction sequence (JSON input)")
        lay = star_queue_layout(seq)
    elif a.method == "bfs":
        lay = bfs_tree_layout(g)
    else:
        lay = stars_to_queues(g, degeneracy_star_partition(g), LinearOrder.identity(g.n))
    _emit(io.layout_to_json(lay), a.output)
    return OK


def cmd_check(a) -> int:
    g, _ = _load_input(a.graph)
    lay = _load_layout(a.layout)
    res = validate_layout(g, lay, a.local)
    out = {"schema": io.SCHEMA, "ok": res.ok}
    if res.ok:
        out.update(queues=lay.num_queues, locality=layout_locality(g, lay))
    else:
        from .game.serialize import violation_to_json

        out["violation"] = violation_to_json(res)
    _emit(out, a.output)
    return OK if res.ok else NEGATIVE


def cmd_solve(a) -> int:
    from .solver import decide_local, exact_lqn, exact_qn

    g, _ = _load_input(a.input)
    try:
        if a.local is not None:
            if a.mode != "lqn":
                raise UsageError("--local is a decision query for --mode lqn")
            res = decide_local(g, a.local, cap=a.cap, budget=a.budget)
            out = {"schema": io.SCHEMA, "mode": "lqn", "local": a.local, "sat": res is not None}
            if res is not None:
                out["witness"] = io.layout_to_json(res.witness)
            _emit(out, a.output)
            return OK if res is not None else NEGATIVE
        res = (exact_lqn if a.mode == "lqn" else exact_qn)(g, cap=a.cap, budget=a.budget)
    except Timeout as exc:
        out = {"schema": io.SCHEMA, "mode": a.mode, "timeout": str(exc)}
        if exc.best is not None:
            out["best"] = exc.best.to_json()
        _emit(out, a.output)
        return BUDGET
    out = res.to_json()
    out["mode"] = a.mode
    _emit(out, a.output)
    return OK


def cmd_bounds(a) -> int:
    g, _ = _load_input(a.input)
    out = thm2_bounds(g).to_json()
    out.update(n=g.n, m=g.m)
    _emit(out, a.output)
    return OK


LIFT_STEPS = {
    (5, 4): "lift_v_to_iv",
    (4, 3): "lift_iv_to_iii",
    (3, 2): "lift_iii_to_ii",
    (7, 6): "lift_vii_to_vi",
    (6, 5): "lift_vi_to_v",
}


def _strategy(spec: str, k: int, ell: int):
    """(strategy, level it wins) from ``fig3``, ``game7``, ``one-child`` or
    ``lifted:<base>>level>level...`` such as ``lifted:fig3>iv>iii``."""
    from .game import lifts
    from .game.state import parse_level
    from .game.strategies import OneChildStrategy, fig3_strategy, game7_strategy

    bases = {
        "fig3": (lambda: fig3_strategy(), 5),
        "game7": (lambda: game7_strategy(k, ell), 7),
        "one-child": (lambda: OneChildStrategy(), 1),
    }
    if not spec.startswith("lifted:"):
        if spec not in bases:
            raise UsageError(f"unknown strategy {spec!r}")
        make, lvl = bases[spec]
        return make(), lvl
    parts = spec[len("lifted:"):].split(">")
    if parts[0] not in bases or len(parts) < 2:
        raise UsageError(f"bad lifted chain {spec!r}")
    make, lvl = bases[parts[0]]
    s = make()
    for p in parts[1:]:
        nxt = parse_level(p)
        name = LIFT_STEPS.get((lvl, nxt))
        if name is None:
            raise UsageError(f"no reduction from level {lvl} to level {nxt}")
        fn = getattr(lifts, name)
        if name == "lift_iv_to_iii":
            s = fn(s, k=k, ell=ell)
        elif name == "lift_vi_to_v":
            s = fn(s, k=k)
        else:
            s = fn(s)
        lvl = nxt
    return s, lvl


def cmd_game(a) -> int:
    from .game.engine import CounterLayout, verify_alice_wins
    from .game.state import GameConfig, parse_level

    strat, lvl = _strategy(a.strategy, a.k, a.l)
    level = parse_level(a.level) if a.level else lvl
    rounds, verts = 10, 64
    if a.caps:
        try:
            rounds, verts = (int(x) for x in a.caps.split(","))
        except ValueError:
            raise UsageError("--caps takes ROUNDS,VERTICES") from None
    config = GameConfig(a.k, a.l, level, rounds, verts)
    if a.play == "random":
        return _random_games(strat, config, a)
    try:
        res = verify_alice_wins(strat, config, node_budget=a.budget)
    except BudgetExceeded as exc:
        _emit({"schema": io.SCHEMA, "kind": "budget-exceeded", "message": str(exc)}, a.output)
        return BUDGET
    if isinstance(res, CounterLayout):
        _emit(res.to_json(), a.output)
        return NEGATIVE
    _emit(res.to_json(pruned=not a.full), a.output)
    return OK


def _random_games(strat, config, a) -> int:
    from collections import Counter

    from .errors import BobDeviation, CopyDivergence, PigeonholeFailure
    from .game.lifts import play_random

    rng = random.Random(a.seed)
    outcomes: Counter = Counter()
    for _ in range(a.runs):
        try:
            outcome, _, _ = play_random(strat, config, rng)
        except BobDeviation:
            outcome = "deviation-refuted"
        except CopyDivergence:
            outcome = "copy-divergence"
        except PigeonholeFailure:
            outcome = "pigeonhole-failure"
        outcomes[outcome] += 1
    counters = getattr(strat, "counters", {})
    out = {
        "schema": io.SCHEMA,
        "kind": "random-play",
        "strategy": a.strategy,
        "level": config.level,
        "runs": a.runs,
        "seed": a.seed,
        "outcomes": dict(sorted(outcomes.items())),
        "counters": {k: v for k, v in sorted(counters.items()) if isinstance(v, (int, float, type(None)))},
    }
    _emit(out, a.output)
    return NEGATIVE if outcomes["survived"] else OK


def cmd_render(a) -> int:
    from .render import render_arc_diagram

    g, _ = _load_input(a.graph)
    lay = _load_layout(a.layout)
    hi = None
    if a.highlight == "auto":
        hi = find_nesting_pair(lay)
    elif a.highlight:
        try:
            hi = [io.parse_edge_key(x) for x in a.highlight.split(",")]
        except ParseError as exc:
            raise UsageError(str(exc)) from None
    _write(render_arc_diagram(g, lay, highlight=hi), a.output)
    return OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="queuelay", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp):
        sp.add_argument("-o", "--output", help="output file (default stdout)")

    g = sub.add_parser("gen", help="generate a graph or construction sequence")
    g.add_argument("family", choices=["ktree", "mary", "fig3", "halfclique", "tree", "gnp", "complete", "lower-bound"])
    g.add_argument("--k", type=int, default=None)
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--m", type=int, default=2)
    g.add_argument("--t", type=int, default=2)
    g.add_argument("--s", type=int, default=1)
    g.add_argument("--p", type=float, default=0.3)
    g.add_argument("--kprime", type=int, default=2)
    g.add_argument("--l", type=int, default=2)
    g.add_argument("--strategy", default="one-child")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=["json", "edges"])
    out(g)

    lay = sub.add_parser("layout", help="constructive layouts")
    lay.add_argument("input")
    lay.add_argument("--method", choices=["star", "bfs", "degeneracy"], default="star")
    out(lay)

    c = sub.add_parser("check", help="validate a layout")
    c.add_argument("graph")
    c.add_argument("layout")
    c.add_argument("--local", type=int, default=None)
    out(c)

    s = sub.add_parser("solve", help="exact (local) queue number")
    s.add_argument("input")
    s.add_argument("--mode", choices=["lqn", "qn"], default="lqn")
    s.add_argument("--local", type=int, default=None)
    s.add_argument("--budget", type=float, default=None, help="seconds")
    s.add_argument("--cap", type=int, default=10, help="vertex cap")
    out(s)

    b = sub.add_parser("bounds", help="density bounds")
    b.add_argument("input")
    out(b)

    gm = sub.add_parser("game", help="verify an Alice strategy")
    gm.add_argument("--level", default=None)
    gm.add_argument("--k", type=int, default=2)
    gm.add_argument("--l", type=int, default=2)
    gm.add_argument("--strategy", default="fig3")
    gm.add_argument("--caps", default=None, help="ROUNDS,VERTICES")
    gm.add_argument("--budget", type=int, default=200_000, help="game-tree nodes")
    gm.add_argument("--full", action="store_true", help="keep every leaf refutation")
    gm.add_argument("--play", choices=["exhaustive", "random"], default="exhaustive")
    gm.add_argument("--runs", type=int, default=100)
    gm.add_argument("--seed", type=int, default=0)
    out(gm)

    r = sub.add_parser("render", help="SVG arc diagram")
    r.add_argument("graph")
    r.add_argument("layout")
    r.add_argument("--highlight", default=None, help="'auto' or u-v,x-y")
    out(r)
    return p


COMMANDS = {
    "gen": cmd_gen,
    "layout": cmd_layout,
    "check": cmd_check,
    "solve": cmd_solve,
    "bounds": cmd_bounds,
    "game": cmd_game,
    "render": cmd_render,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[a.command](a)
    except SizeOverflow as exc:
        print(f"queuelay: {exc}", file=sys.stderr)
        return BUDGET
    except (UsageError, ParseError, ConfigMismatch, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"queuelay: {exc}", file=sys.stderr)
        return USAGE
    except QueuelayError as exc:
        print(f"queuelay: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
