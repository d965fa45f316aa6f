"""Arc diagrams: vertices on a horizontal spine, one colour per queue."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Set, Union
from xml.sax.saxutils import escape

from .graph import Edge, Graph, edge
from .layout import QueueLayout, RainbowViolation, RainbowWitness, nests

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
)
DASHES = ("", "6 3", "2 2", "8 3 2 3")

STEP = 48
MARGIN = 24


def queue_style(q: int):
    """(colour, dash pattern) of queue ``q``; dashes start after 12 queues."""
    return PALETTE[q % len(PALETTE)], DASHES[(q // len(PALETTE)) % len(DASHES)]


def violating_edges(layout: QueueLayout) -> Set[Edge]:
    """Edges involved in some same-queue nesting pair."""
    bad: Set[Edge] = set()
    for es in layout.queues().values():
        for i, e in enumerate(es):
            for f in es[i + 1:]:
                if nests(e, f, layout.order):
                    bad.update((e, f))
    return bad


def render_arc_diagram(
    g: Graph,
    layout: QueueLayout,
    out: Optional[str] = None,
    highlight: Union[RainbowWitness, RainbowViolation, Iterable[Edge], None] = None,
    labels: Optional[Sequence[str]] = None,
) -> str:
    """SVG text of the layout; written to ``out`` when given.

    Output depends only on the arguments.  Arcs of ``highlight`` are drawn
    on top with a black outline, edges in a same-queue nesting pair thick.
    """
    order = layout.order
    n = len(order)
    lengths = [abs(order.rank(u) - order.rank(v)) for u, v in g.edges] or [1]
    width = 2 * MARGIN + max(n - 1, 1) * STEP
    top = MARGIN + max(lengths) * STEP // 2
    height = top + 2 * MARGIN
    if highlight is None:
        hi: Set[Edge] = set()
    elif isinstance(highlight, (RainbowWitness, RainbowViolation)):
        hi = {edge(*e) for e in highlight.edges}
    else:
        hi = {edge(*e) for e in highlight}
    bad = violating_edges(layout)

    def x(v):
        return MARGIN + order.rank(v) * STEP

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<line x1="{MARGIN}" y1="{top}" x2="{width - MARGIN}" y2="{top}" stroke="#000" stroke-width="1"/>',
    ]
    # long arcs first so short ones stay visible
    arcs = sorted(g.edges, key=lambda e: (-abs(order.rank(e[0]) - order.rank(e[1])), order.ends(e)))
    for e in arcs:
        a, b = sorted((x(e[0]), x(e[1])))
        r = (b - a) / 2
        colour, dash = queue_style(layout.assign[e])
        w = 3.5 if e in bad else 1.5
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        d = f"M {a} {top} A {r:g} {r:g} 0 0 1 {b} {top}"
        if e in hi:
            lines.append(f'<path d="{d}" fill="none" stroke="#000" stroke-width="{w + 3:g}"/>')
        lines.append(
            f'<path d="{d}" fill="none" stroke="{colour}" stroke-width="{w:g}"{dash_attr}>'
            f"<title>{e[0]}-{e[1]} q{layout.assign[e]}</title></path>"
        )
    for v in order:
        name = escape(labels[v]) if labels else str(v)
        lines.append(f'<circle cx="{x(v)}" cy="{top}" r="4" fill="#fff" stroke="#000"/>')
        lines.append(f'<text x="{x(v)}" y="{top + 18}" text-anchor="middle" font-family="sans-serif" font-size="12">{name}</text>')
    lines.append("</svg>")
    text = "\n".join(lines) + "\n"
    if out is not None:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
