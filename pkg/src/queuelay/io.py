"""Text and JSON formats.  Every JSON document carries ``"schema": "queuelay/1"``."""

from __future__ import annotations

import json
from typing import Any, Dict

from .constructors import StarPartition
from .errors import ParseError
from .graph import ConstructionSequence, Graph, Step, edge
from .layout import LinearOrder, QueueLayout

SCHEMA = "queuelay/1"


def dumps(obj: Any) -> str:
    """Deterministic JSON text (insertion-ordered keys, trailing newline)."""
    return json.dumps(obj, indent=1, separators=(",", ": ")) + "\n"


def _check_schema(obj: Dict, what: str):
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected a JSON object")
    if obj.get("schema", SCHEMA) != SCHEMA:
        raise ParseError(f"{what}: unsupported schema {obj.get('schema')!r}")


# --------------------------------------------------------------------------
# edge-list text


def parse_graph(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("header must be 'n m'", 1)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header must hold two integers", 1) from None
    if n < 0 or m < 0:
        raise ParseError("negative size", 1)
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != m:
        raise ParseError(f"expected {m} edge lines, found {len(body)}", len(body) + 2)
    seen = set()
    for i, line in enumerate(body, start=2):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("edge line must be 'u v'", i)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", i) from None
        if u == v:
            raise ParseError(f"self-loop at {u}", i)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range 0..{n - 1}", i)
        e = edge(u, v)
        if e in seen:
            raise ParseError(f"duplicate edge {e[0]} {e[1]}", i)
        seen.add(e)
    return Graph(n, frozenset(seen))


def emit_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# construction sequences


def sequence_to_json(seq: ConstructionSequence) -> dict:
    return {
        "schema": SCHEMA,
        "k": seq.k,
        "init": list(seq.init),
        "steps": [{"parent": list(s.parent), "child": s.child} for s in seq.steps],
    }


def sequence_from_json(obj: dict) -> ConstructionSequence:
    _check_schema(obj, "sequence")
    try:
        steps = tuple(Step(tuple(s["parent"]), int(s["child"])) for s in obj["steps"])
        seq = ConstructionSequence(int(obj["k"]), tuple(obj["init"]), steps)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"sequence: malformed document ({exc})") from None
    seq.validate()
    return seq


# --------------------------------------------------------------------------
# layouts


def edge_key(e) -> str:
    return f"{e[0]}-{e[1]}"


def parse_edge_key(key: str):
    try:
        a, b = key.split("-")
        u, v = int(a), int(b)
    except ValueError:
        raise ParseError(f"bad edge key {key!r}") from None
    if not u < v:
        raise ParseError(f"edge key {key!r} must have u < v")
    return (u, v)


def layout_to_json(layout: QueueLayout) -> dict:
    return {
        "schema": SCHEMA,
        "order": list(layout.order.order),
        "queues": {edge_key(e): layout.assign[e] for e in sorted(layout.assign)},
    }


def layout_from_json(obj: dict) -> QueueLayout:
    _check_schema(obj, "layout")
    try:
        order = LinearOrder(int(v) for v in obj["order"])
        assign = {parse_edge_key(k): int(q) for k, q in obj["queues"].items()}
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"layout: malformed document ({exc})") from None
    return QueueLayout(order, assign)


def star_partition_to_json(sp: StarPartition) -> dict:
    return {
        "schema": SCHEMA,
        "stars": [{"center": c, "edges": [edge_key(e) for e in sorted(es)]} for c, es in sp.stars],
    }


def star_partition_from_json(obj: dict) -> StarPartition:
    _check_schema(obj, "star partition")
    try:
        stars = [(int(s["center"]), [parse_edge_key(k) for k in s["edges"]]) for s in obj["stars"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"star partition: malformed document ({exc})") from None
    return StarPartition(stars)
