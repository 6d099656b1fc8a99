#!/usr/bin/env python3
"""Compiled vs pure kernel benchmark.

Times the five hot kernels on representative workloads and prints a table
with the speedup of the Cython backend over the pure-Python one.  Both
backends produce identical outputs (asserted here as a side effect).

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

from ramsimple import rng
from ramsimple._kernels import pykernels
from ramsimple.graph import Graph, forest_embedding_plan, sample_gnp

try:
    from ramsimple._kernels import _ckernels
except ImportError:
    _ckernels = None


def timed(fn, *args, repeat=3):
    best, out = None, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def workloads(quick: bool):
    n_gnp = 1200 if quick else 3000
    thr = rng.bernoulli_threshold(0.3)
    yield "gnp_rows", f"n={n_gnp}, p=0.3", "gnp_rows", (n_gnp, thr, 7)

    G = sample_gnp(400 if quick else 900, 0.2, 5)
    yield "max_codegree", f"n={G.n}", "max_codegree", (list(G.adj), G.n)

    H = sample_gnp(250 if quick else 600, 0.03, 9)
    yield "three_connected", f"n={H.n}, p=0.03", "three_connected", (list(H.adj), H.n)

    host = sample_gnp(120, 0.08, 3)
    forest = Graph.from_edges(12, [(i, i + 1) for i in range(7)] + [(8, 9), (10, 11)])
    _, parents, fdeg = forest_embedding_plan(forest)
    mask = (1 << host.n) - 1
    yield "forest_embed", f"host n={host.n}, forest v=12", "forest_embed", (
        list(host.adj), host.n, parents, fdeg, mask,
    )

    K = Graph.complete(7 if quick else 8)
    deg = K.degrees()
    edges = sorted(K.edges(), key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))
    K3 = Graph.complete(3)
    yield "arrows_search", f"K_{K.n} ->(2) K_3", "arrows_search", (
        K.n, edges, 2, 3, K3.edges(), None, None,
    )


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled backend unavailable; nothing to compare")
        return 1
    print(f"{'kernel':<16} {'workload':<24} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for name, desc, fn, fargs in workloads(args.quick):
        t_py, out_py = timed(getattr(pykernels, fn), *fargs)
        t_c, out_c = timed(getattr(_ckernels, fn), *fargs)
        assert out_py == out_c, f"{name}: backends disagree"
        print(f"{name:<16} {desc:<24} {t_py:>10.4f} {t_c:>13.4f} {t_py / t_c:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
