import itertools
import math
import random

import pytest

from queuelay.constructors import star_queue_layout
from queuelay.errors import DepthMismatch
from queuelay.game import NonNestingWitness, edge_children, halfclique_nonnesting, lemma4_analyze
from queuelay.graph import EdgeDepthMap, expand, halfclique_family, mary_ktree, truncate_mary
from queuelay.layout import LinearOrder, LocalityViolation, QueueLayout, RainbowWitness, outside
from queuelay.solver import min_locality_for_order


def test_edge_children_counts():
    seq, depths = mary_ktree(3, 2)
    kids = edge_children(expand(seq), depths)
    for e, d in depths.depth.items():
        assert len(kids[e]) == (3 if d < 2 else 0)


def test_edge_children_rejects_bad_depths():
    seq, depths = mary_ktree(2, 2)
    g = expand(seq)
    with pytest.raises(DepthMismatch):
        edge_children(g, EdgeDepthMap({**depths.depth, (0, 1): 1}, (0, 1), 2, 2, 2))
    with pytest.raises(DepthMismatch):
        edge_children(g, EdgeDepthMap({**depths.depth, (0, 2): 1}, (0, 1), 2, 2, 2))
    bumped = dict(depths.depth)
    bumped[(0, 3)] = 2
    with pytest.raises(DepthMismatch):
        edge_children(g, EdgeDepthMap(bumped, (0, 1), 2, 2, 2))


def test_lemma4_children_outside_root():
    # every child of the root edge to the right: the root already has s
    # non-nesting children
    seq, depths = mary_ktree(3, 1)
    g = expand(seq)
    lay = star_queue_layout(seq, LinearOrder(range(g.n)))
    res = lemma4_analyze(g, depths, lay, 3)
    assert isinstance(res, NonNestingWitness) and res.clique == (0, 1)
    assert res.verify(lay.order)


def test_lemma4_flags_bad_layouts():
    seq, depths = mary_ktree(2, 2)
    g = expand(seq)
    order = LinearOrder([0] + list(range(3, g.n)) + [2, 1])  # every child nests under the root
    one = QueueLayout(order, {e: 0 for e in g.edges})
    res = lemma4_analyze(g, depths, one, 3)
    assert isinstance(res, RainbowWitness) and res.verify(order, one.assign)
    spread = QueueLayout(order, {e: i for i, e in enumerate(sorted(g.edges))})
    res = lemma4_analyze(g, depths, spread, 3)
    assert isinstance(res, LocalityViolation) and res.verify(spread)


def test_lemma4_on_random_two_local_layouts():
    """Whatever comes back is re-checkable; None only for valid layouts."""
    seq, depths = mary_ktree(5, 3)
    rng = random.Random(4)
    seen = {}
    for n in (6, 8, 10):
        tseq, tdepths = truncate_mary(seq, depths, n)
        g = expand(tseq)
        for _ in range(25):
            perm = list(range(n))
            rng.shuffle(perm)
            lay = min_locality_for_order(g, LinearOrder(perm), 2)
            if lay is None:
                continue
            res = lemma4_analyze(g, tdepths, lay, 1)
            seen[type(res).__name__] = seen.get(type(res).__name__, 0) + 1
            if isinstance(res, NonNestingWitness):
                assert res.verify(lay.order)
            else:
                assert res is None
    assert seen


# --------------------------------------------------------------------------
# half cliques: exhaustive over every order


def _halfclique_brute(seq, order):
    """Largest number of children outside the span of some ceil(k/2) subset
    made of the leftmost or rightmost clique vertices."""
    clique = sorted(seq.steps[0].parent, key=order.rank)
    h = math.ceil(len(clique) / 2)
    kids = [st.child for st in seq.steps]
    return max(sum(outside(x, half, order) for x in kids) for half in (clique[:h], clique[-h:]))


@pytest.mark.parametrize("k,s", [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)])
def test_halfclique_every_order(k, s):
    seq = halfclique_family(k, s)
    g = expand(seq)
    for perm in itertools.permutations(range(g.n)):
        order = LinearOrder(perm)
        half, w = halfclique_nonnesting(seq, QueueLayout(order, {}))
        assert len(half) == math.ceil(k / 2) and set(half) <= set(range(k))
        assert w.verify(order) and len(w.children) >= s
        assert len(w.children) <= _halfclique_brute(seq, order)
