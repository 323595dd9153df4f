#!/usr/bin/env python3
"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload runs on both backends, the results are checked for equality,
and the best wall time of ``--repeat`` runs is reported.
"""

import argparse
import time

import numpy as np

from cyclemass import kernels
from cyclemass.blowup import build_blowup, uniform_blowup
from cyclemass.graphs import complete_graph, cycle_graph
from cyclemass.mass import MC_BLOCK, _block_rng, uniform_on_edges


def _blowup_cycles(impl):
    G = build_blowup(uniform_blowup(cycle_graph(6), 4)).graph
    return len(impl.simple_cycles(G.adj, G.n, 12))


def _complete_cycles(impl):
    G = complete_graph(9)
    return len(impl.simple_cycles(G.adj, G.n, 8))


def _canonical(impl):
    rng = np.random.default_rng(7)
    out = 0
    for _ in range(2000):
        n = 9
        upper = np.triu(rng.random((n, n)) < 0.5, 1)
        A = upper | upper.T
        adj = [int(sum(1 << j for j in range(n) if A[i, j])) for i in range(n)]
        out ^= impl.canonical_labeling(adj, n)[0]
    return out


def _monte_carlo_inputs():
    mu = uniform_on_edges(cycle_graph(6))
    eu = np.array([u for u, _ in mu.support], dtype=np.int64)
    ev = np.array([v for _, v in mu.support], dtype=np.int64)
    cdf = np.cumsum([float(x) for _, x in mu.items()])
    blocks = []
    for b in range(16):
        u = _block_rng(1, b).random((MC_BLOCK, 6))
        blocks.append(np.minimum(np.searchsorted(cdf, u, side="right"), 5).astype(np.int64))
    return eu, ev, blocks


_MC = None


def _monte_carlo(impl):
    global _MC
    if _MC is None:
        _MC = _monte_carlo_inputs()
    eu, ev, blocks = _MC
    return sum(impl.mc_successes(eu, ev, idx, 6) for idx in blocks)


WORKLOADS = [
    ("12-cycles in C6 blow-up (t=4)", _blowup_cycles),
    ("8-cycles in K9", _complete_cycles),
    ("canonical labelling, 2000 random G(9)", _canonical),
    ("Monte Carlo test, 2^20 samples", _monte_carlo),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = sorted(kernels.BACKENDS)
    print(f"{'workload':40s}" + "".join(f"{n:>12s}" for n in names) + "   speedup")
    for label, fn in WORKLOADS:
        times, results = {}, {}
        for name in names:
            impl = kernels.BACKENDS[name]
            best = float("inf")
            for _ in range(args.repeat):
                t = time.perf_counter()
                results[name] = fn(impl)
                best = min(best, time.perf_counter() - t)
            times[name] = best
        if len(set(map(str, results.values()))) != 1:
            raise SystemExit(f"backends disagree on {label}: {results}")
        row = f"{label:40s}" + "".join(f"{times[n]:11.4f}s" for n in names)
        if "cython" in times:
            row += f"   {times['python'] / times['cython']:7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
