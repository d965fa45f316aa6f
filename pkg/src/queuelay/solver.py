"""Exact queue number and local queue number on small graphs."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterator, Optional

from . import kernels
from .constructors import degeneracy_star_partition, stars_to_queues
from .errors import Timeout
from .graph import Graph
from .layout import LinearOrder, QueueLayout, canonical_assignment, max_rainbow

DEFAULT_CAP = 10
NODE_LIMIT = 10**12


@dataclass
class SolveResult:
    value: int
    witness: QueueLayout
    nodes: int = 0
    seconds: float = 0.0
    exact: bool = True
    orders: int = 0

    def to_json(self) -> dict:
        from .io import layout_to_json

        return {
            "schema": "queuelay/1",
            "value": self.value,
            "exact": self.exact,
            "witness": layout_to_json(self.witness),
            "stats": {"nodes": self.nodes, "orders": self.orders},
        }


def _ranked_edges(g: Graph, order: LinearOrder):
    pos = order.pos
    items = []
    for e in g.edges:
        a, b = pos[e[0]], pos[e[1]]
        if a > b:
            a, b = b, a
        items.append((a, b, e))
    items.sort()
    return items


def min_queues_for_order(g: Graph, order: LinearOrder) -> SolveResult:
    """Fewest queues for a fixed spine: layer each edge by the longest chain
    of edges enclosing it."""
    items = _ranked_edges(g, order)
    layer = []
    for i, (a, b, _) in enumerate(items):
        best = 0
        for j in range(i):
            c, d, _ = items[j]
            if c < a and b < d and layer[j] + 1 > best:
                best = layer[j] + 1
        layer.append(best)
    assign = {e: layer[i] for i, (_, _, e) in enumerate(items)}
    value = max(layer) + 1 if layer else 0
    return SolveResult(value, QueueLayout(order, assign), nodes=len(items) ** 2)


def min_locality_for_order(
    g: Graph, order: LinearOrder, ell: int, node_limit: int = NODE_LIMIT
) -> Optional[QueueLayout]:
    """A layout on spine ``order`` with locality <= ell, or None if none exists.

    Raises :class:`Timeout` when the node limit is reached.
    """
    layout, _ = _search_order(g, order, ell, node_limit)
    return layout


def _search_order(g, order, ell, node_limit):
    items = _ranked_edges(g, order)
    left = [a for a, _, _ in items]
    right = [b for _, b, _ in items]
    status, assign, nodes = kernels.locality_search(left, right, g.n, ell, node_limit)
    if status < 0:
        raise Timeout(f"node limit {node_limit} reached", best=None)
    if status == 0:
        return None, nodes
    layout = QueueLayout(order, {e: assign[i] for i, (_, _, e) in enumerate(items)})
    return layout, nodes


def spine_orders(n: int) -> Iterator[LinearOrder]:
    """All orders of ``0..n-1`` up to reversal (first rank < last rank)."""
    if n <= 1:
        yield LinearOrder(range(n))
        return
    for p in itertools.permutations(range(n)):
        if p[0] < p[-1]:
            yield LinearOrder(p)


def _check_cap(g: Graph, cap: int):
    if g.n > cap:
        raise ValueError(f"graph has {g.n} vertices, above the solver cap {cap}")


def exact_lqn(g: Graph, cap: int = DEFAULT_CAP, budget: Optional[float] = None) -> SolveResult:
    """Smallest ell admitting an ell-local queue layout, by iterative deepening.

    ``budget`` is in seconds; on expiry :class:`Timeout` carries the best
    feasible layout found (the star layout at worst).
    """
    _check_cap(g, cap)
    start = time.perf_counter()
    fallback = stars_to_queues(g, degeneracy_star_partition(g), LinearOrder.identity(g.n))
    best = _result(g, fallback, 0, 0, start, exact=False, local=True)
    if g.m == 0:
        return _result(g, QueueLayout(LinearOrder.identity(g.n), {}), 0, 0, start, exact=True, local=True)
    nodes = 0
    count = 0
    ell = 1
    while ell < best.value:
        for order in spine_orders(g.n):
            count += 1
            if budget is not None and time.perf_counter() - start > budget:
                best.nodes, best.orders = nodes, count
                raise Timeout(f"budget {budget}s exhausted at ell={ell}", best=best)
            layout, used = _search_order(g, order, ell, NODE_LIMIT)
            nodes += used
            if layout is not None:
                return _result(g, layout, nodes, count, start, exact=True, local=True)
        ell += 1
    best.nodes, best.orders, best.exact = nodes, count, True
    best.seconds = time.perf_counter() - start
    return best


def decide_local(g: Graph, ell: int, cap: int = DEFAULT_CAP, budget: Optional[float] = None) -> Optional[SolveResult]:
    """An ell-local layout of ``g`` if one exists, else None."""
    _check_cap(g, cap)
    start = time.perf_counter()
    nodes = count = 0
    for order in spine_orders(g.n):
        count += 1
        if budget is not None and time.perf_counter() - start > budget:
            raise Timeout(f"budget {budget}s exhausted", best=None)
        layout, used = _search_order(g, order, ell, NODE_LIMIT)
        nodes += used
        if layout is not None:
            return _result(g, layout, nodes, count, start, exact=True, local=True)
    return None


def exact_qn(g: Graph, cap: int = DEFAULT_CAP, budget: Optional[float] = None) -> SolveResult:
    """Queue number: minimum over spine orders of the largest rainbow."""
    _check_cap(g, cap)
    start = time.perf_counter()
    best_val, best_order = None, None
    count = 0
    floor = 1 if g.m else 0
    for order in spine_orders(g.n):
        count += 1
        if budget is not None and time.perf_counter() - start > budget and best_order is not None:
            res = min_queues_for_order(g, best_order)
            res.exact, res.orders, res.seconds = False, count, time.perf_counter() - start
            raise Timeout(f"budget {budget}s exhausted", best=res)
        size, _ = max_rainbow(g, order)
        if best_val is None or size < best_val:
            best_val, best_order = size, order
            if size == floor:
                break
    res = min_queues_for_order(g, best_order)
    res.orders, res.seconds = count, time.perf_counter() - start
    res.witness = QueueLayout(res.witness.order, canonical_assignment(res.witness.order, res.witness.assign))
    return res


def _result(g, layout, nodes, count, start, exact, local):
    layout = QueueLayout(layout.order, canonical_assignment(layout.order, layout.assign))
    vq = layout.vertex_queues()
    value = max((len(s) for s in vq.values()), default=0) if local else layout.num_queues
    return SolveResult(value, layout, nodes, time.perf_counter() - start, exact, count)
