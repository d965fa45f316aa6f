import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from queuelay.errors import CoverageError, EmptySet, UnknownVertex
from queuelay.graph import Graph, complete_graph, expand, random_graph, random_ktree, star_graph
from queuelay.layout import (
    LinearOrder,
    LocalityViolation,
    QueueLayout,
    RainbowViolation,
    below,
    crosses,
    locality,
    max_rainbow,
    nests,
    outside,
    span,
    validate_layout,
)

ORDER = LinearOrder([1, 2, 3, 4, 5, 6, 0])


def test_nests_examples():
    assert nests((1, 4), (2, 3), ORDER)
    assert not nests((1, 3), (2, 4), ORDER)
    assert not nests((1, 2), (2, 3), ORDER)
    assert nests((2, 3), (1, 4), ORDER)


def test_crosses_examples():
    assert crosses((1, 3), (2, 4), ORDER)
    assert not crosses((1, 4), (2, 3), ORDER)
    assert not crosses((1, 2), (2, 3), ORDER)


def test_unknown_vertex():
    with pytest.raises(UnknownVertex):
        nests((1, 9), (2, 3), ORDER)


def test_span_below_outside():
    o = LinearOrder([0, 1, 2, 3, 4, 5, 6])
    assert span({2, 5}, o) == {2, 3, 4, 5}
    assert below(3, {2, 5}, o)
    assert outside(6, {2, 5}, o)
    with pytest.raises(EmptySet):
        span(set(), o)


def _pairs(order):
    return lambda e, f: (order.rank(e[0]), order.rank(e[1]), order.rank(f[0]), order.rank(f[1]))


@settings(max_examples=200, deadline=None)
@given(st.permutations(range(6)), st.sampled_from(list(itertools.combinations(range(6), 2))),
       st.sampled_from(list(itertools.combinations(range(6), 2))))
def test_nest_cross_against_positions(perm, e, f):
    o = LinearOrder(perm)
    a, b = sorted((o.rank(e[0]), o.rank(e[1])))
    c, d = sorted((o.rank(f[0]), o.rank(f[1])))
    assert nests(e, f, o) == ((a < c and d < b) or (c < a and b < d))
    assert crosses(e, f, o) == ((a < c < b < d) or (c < a < d < b))
    assert nests(e, f, o) == nests(f, e, o)


def test_validate_examples():
    g = complete_graph(3)
    res = validate_layout(g, QueueLayout(LinearOrder([0, 1, 2]), {e: 0 for e in g.edges}))
    assert res.ok and res.locality == 1
    g = Graph.from_edges(4, [(0, 3), (1, 2)])
    res = validate_layout(g, QueueLayout(LinearOrder([0, 1, 2, 3]), {(0, 3): 0, (1, 2): 0}))
    assert isinstance(res, RainbowViolation) and set(res.edges) == {(0, 3), (1, 2)}


def test_locality_violation_is_recheckable():
    g = star_graph(3)
    lay = QueueLayout(LinearOrder(range(4)), {(0, 1): 0, (0, 2): 1, (0, 3): 2})
    res = validate_layout(g, lay, 2)
    assert isinstance(res, LocalityViolation) and res.vertex == 0
    assert res.verify(lay)
    assert locality(g, lay, 0) == 3


def test_coverage_error():
    g = complete_graph(3)
    with pytest.raises(CoverageError):
        validate_layout(g, QueueLayout(LinearOrder([0, 1, 2]), {(0, 1): 0}))


def brute_rainbow(g, order):
    es = sorted(g.edges)
    best = 1 if es else 0
    for r in range(2, len(es) + 1):
        found = False
        for sub in itertools.combinations(es, r):
            if all(nests(e, f, order) for e, f in itertools.combinations(sub, 2)):
                found = True
                break
        if not found:
            break
        best = r
    return best


def test_max_rainbow_examples():
    g = Graph.from_edges(6, [(0, 5), (1, 4), (2, 3)])
    size, w = max_rainbow(g, LinearOrder(range(6)))
    assert size == 3 and w.verify(LinearOrder(range(6)))
    assert max_rainbow(star_graph(6), LinearOrder([3, 1, 0, 2, 6, 4, 5]))[0] == 1
    assert max_rainbow(Graph.from_edges(4, [(0, 2), (1, 3)]), LinearOrder(range(4)))[0] == 1


@settings(max_examples=120, deadline=None)
@given(st.integers(2, 7), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_max_rainbow_matches_brute_force(n, p, seed):
    g = random_graph(n, p, seed)
    perm = list(range(n))
    random.Random(seed).shuffle(perm)
    o = LinearOrder(perm)
    size, w = max_rainbow(g, o)
    assert size == brute_rainbow(g, o)
    assert len(w.edges) == size and w.verify(o)


def test_witness_needs_queue_agreement():
    from queuelay.layout import RainbowWitness

    o = LinearOrder(range(4))
    w = RainbowWitness(((0, 3), (1, 2)), 0)
    assert w.verify(o, {(0, 3): 0, (1, 2): 0})
    assert not w.verify(o, {(0, 3): 0, (1, 2): 1})
    assert not RainbowWitness(((0, 2), (1, 3))).verify(o)


def test_restrict_and_canonical():
    seq = random_ktree(2, 8, 3)
    g = expand(seq)
    lay = QueueLayout(LinearOrder(range(8)), {e: (e[0] * 7 + e[1]) % 3 + 5 for e in g.edges})
    c = lay.canonical()
    assert sorted(set(c.assign.values())) == list(range(len(set(lay.assign.values()))))
    sub = lay.restrict(range(4))
    assert set(sub.assign) == {e for e in g.edges if e[1] < 4}
