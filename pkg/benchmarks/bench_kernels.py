"""Compiled vs pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

The per-order backtracking of the exact solver dominates, so the main row
is ``exact_lqn`` on small 2-trees; the rainbow chain is timed separately.
"""

import argparse
import random
import time

from queuelay import kernels
from queuelay.graph import expand, random_graph, random_ktree
from queuelay.layout import LinearOrder, max_rainbow
from queuelay.solver import exact_lqn


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def workloads():
    trees = [expand(random_ktree(2, 8, seed)) for seed in range(3)]
    rng = random.Random(0)
    dense = [random_graph(60, 0.3, s) for s in range(5)]
    orders = []
    for g in dense:
        o = list(range(g.n))
        rng.shuffle(o)
        orders.append((g, LinearOrder(o)))
    return {
        "exact_lqn 2-trees n=8": lambda: [exact_lqn(g).value for g in trees],
        "max_rainbow G(60,0.3)": lambda: [max_rainbow(g, o)[0] for g, o in orders],
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    for name, fn in workloads().items():
        row = {}
        for b in backends:
            kernels.set_backend(b)
            row[b] = _time(fn, args.repeat)
        results = {r[1].__repr__() for r in row.values()}
        assert len(results) == 1, f"backends disagree on {name}"
        cells = "  ".join(f"{b} {t * 1000:9.1f} ms" for b, (t, _) in row.items())
        speed = ""
        if "cython" in row:
            speed = f"  x{row['python'][0] / row['cython'][0]:.1f}"
        print(f"{name:26s} {cells}{speed}")


if __name__ == "__main__":
    main()
