import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from queuelay import _pykernels, kernels
from queuelay.errors import Timeout
from queuelay.graph import Graph, complete_graph, expand, fig3_witness, path_graph, random_graph, random_ktree
from queuelay.layout import LinearOrder, max_rainbow, nests, validate_layout
from queuelay.solver import decide_local, exact_lqn, exact_qn, min_locality_for_order, min_queues_for_order


def brute_lqn(g):
    """Every order, every assignment into at most m queues (tiny graphs only)."""
    es = sorted(g.edges)
    best = None
    for perm in itertools.permutations(range(g.n)):
        o = LinearOrder(perm)
        for qs in itertools.product(range(len(es)), repeat=len(es)):
            if any(qs[i] == qs[j] and nests(es[i], es[j], o) for i, j in itertools.combinations(range(len(es)), 2)):
                continue
            loc = max(len({q for e, q in zip(es, qs) if v in e}) for v in range(g.n))
            if best is None or loc < best:
                best = loc
    return best


def test_k4():
    g = complete_graph(4)
    assert exact_lqn(g).value == 2
    assert exact_qn(g).value == 2


def test_fig3_witness_values():
    g = expand(fig3_witness())
    assert exact_lqn(g).value == 2
    assert exact_qn(g).value == 2


def test_paths_and_triangles():
    assert exact_lqn(path_graph(5)).value == 1
    assert exact_qn(complete_graph(3)).value == 1
    assert exact_lqn(Graph.from_edges(3, [])).value == 0


@pytest.mark.parametrize("seed", range(6))
def test_lqn_matches_brute_force(seed):
    g = random_graph(4, 0.7, seed)
    if g.m > 5:
        g = Graph.from_edges(4, sorted(g.edges)[:5])
    assert exact_lqn(g).value == brute_lqn(g)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 9), st.floats(0.2, 0.9), st.integers(0, 10**6))
def test_min_queues_equals_max_rainbow(n, p, seed):
    g = random_graph(n, p, seed)
    perm = list(range(n))
    random.Random(seed).shuffle(perm)
    o = LinearOrder(perm)
    res = min_queues_for_order(g, o)
    assert res.value == max_rainbow(g, o)[0]
    assert validate_layout(g, res.witness).ok


def test_solver_witnesses_are_valid():
    for seed in range(8):
        g = expand(random_ktree(2, 7, seed))
        r1, r2 = exact_lqn(g), exact_qn(g)
        assert validate_layout(g, r1.witness, r1.value).ok
        assert validate_layout(g, r2.witness).ok and r2.witness.num_queues == r2.value
        assert r1.value <= r2.value


def test_decide_local():
    g = complete_graph(5)
    assert decide_local(g, 1) is None
    res = decide_local(g, 2)
    assert res is not None and validate_layout(g, res.witness, 2).ok


def test_min_locality_for_order():
    g = complete_graph(4)
    assert min_locality_for_order(g, LinearOrder(range(4)), 1) is None
    lay = min_locality_for_order(g, LinearOrder(range(4)), 2)
    assert validate_layout(g, lay, 2).ok


def test_cap_and_budget():
    with pytest.raises(ValueError):
        exact_lqn(complete_graph(12))
    with pytest.raises(Timeout) as info:
        exact_lqn(random_graph(10, 0.8, 1), budget=0.0)
    best = info.value.best
    assert best is not None and validate_layout(random_graph(10, 0.8, 1), best.witness).ok


# --------------------------------------------------------------------------
# compiled kernels agree with the fallback


def _random_intervals(rng, n, m):
    left, right = [], []
    for _ in range(m):
        a, b = sorted(rng.sample(range(n), 2))
        left.append(a)
        right.append(b)
    return left, right


@pytest.mark.skipif("cython" not in kernels.available_backends(), reason="extension not built")
def test_backends_agree():
    from queuelay import _kernels

    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(2, 9)
        left, right = _random_intervals(rng, n, rng.randint(1, 12))
        queue = [rng.randrange(3) for _ in left]
        assert _kernels.first_nesting_pair(left, right, queue) == _pykernels.first_nesting_pair(left, right, queue)
        assert len(_kernels.longest_nesting_chain(left, right)) == len(_pykernels.longest_nesting_chain(left, right))
        ell = rng.randint(1, 3)
        a = _kernels.locality_search(left, right, n, ell, 10**6)
        b = _pykernels.locality_search(left, right, n, ell, 10**6)
        assert a[0] == b[0]


def test_solver_same_on_both_backends():
    g = expand(random_ktree(2, 7, 11))
    values = {}
    for b in kernels.available_backends():
        prev = kernels.set_backend(b)
        try:
            values[b] = (exact_lqn(g).value, exact_qn(g).value)
        finally:
            kernels.set_backend(prev)
    assert len(set(values.values())) == 1
