"""Pure-Python/numpy implementations of the hot kernels.

These define the reference semantics; ``_speedups.pyx`` must produce
identical results for identical inputs.
"""

import numpy as np

__all__ = ["simple_cycles", "canonical_labeling", "mc_successes"]


def simple_cycles(adj, n, m):
    """All m-cycles of the graph with neighbour bitsets ``adj``.

    Each copy is returned once as a vertex tuple ``(r, v1, ..., v_{m-1})`` where
    ``r`` is its smallest vertex and ``v1 < v_{m-1}``.  The list is in
    lexicographic order.
    """
    out = []
    if m < 3 or m > n:
        return out
    path = [0] * m

    def extend(depth, used, last, root_adj):
        if depth == m:
            if root_adj >> last & 1 and path[1] < last:
                out.append(tuple(path))
            return
        cand = adj[last] & ~used
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            path[depth] = v
            extend(depth + 1, used | low, v, root_adj)

    for r in range(n - m + 1):
        higher = ~((1 << (r + 1)) - 1)
        if bin(adj[r] & higher).count("1") < 2:
            continue
        path[0] = r
        # forbid everything <= r so the root stays the minimum
        extend(1, (1 << (r + 1)) - 1, r, adj[r])
    return out


def _refine(adj, cells):
    """Equitable refinement of an ordered partition, label independent."""
    cells = [list(c) for c in cells]
    while True:
        masks = []
        for c in cells:
            mk = 0
            for v in c:
                mk |= 1 << v
            masks.append(mk)
        new_cells = []
        split = False
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            sig = {v: tuple(bin(adj[v] & mk).count("1") for mk in masks) for v in c}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                new_cells.append(c)
                continue
            split = True
            for k in keys:
                new_cells.append([v for v in c if sig[v] == k])
        cells = new_cells
        if not split:
            return cells


def _leaf_key(adj, perm):
    n = len(perm)
    key = 0
    for j in range(1, n):
        row = adj[perm[j]]
        for i in range(j):
            key = (key << 1) | (row >> perm[i] & 1)
    return key


def canonical_labeling(adj, n):
    """Return ``(key, perm)`` minimising the column-major upper-triangle bits.

    ``perm[i]`` is the original vertex placed at canonical position ``i``.
    Search is individualisation/refinement; vertices that are twins of an
    already-tried vertex in the same target cell are skipped (swapping twins
    is an automorphism fixing the current partition).
    """
    if n == 0:
        return 0, []
    degs = [bin(adj[v]).count("1") for v in range(n)]
    start = [[v for v in range(n) if degs[v] == d] for d in sorted(set(degs))]
    best = [None, None]

    def search(cells):
        cells = _refine(adj, cells)
        t = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if t is None:
            perm = [c[0] for c in cells]
            key = _leaf_key(adj, perm)
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, perm
            return
        tried = []
        for v in cells[t]:
            if any(
                (adj[u] & ~(1 << v)) == (adj[v] & ~(1 << u)) for u in tried
            ):
                continue
            tried.append(v)
            rest = [u for u in cells[t] if u != v]
            search(cells[:t] + [[v], rest] + cells[t + 1:])

    search(start)
    return best[0], best[1]


def mc_successes(eu, ev, idx, n):
    """Count rows of ``idx`` whose m sampled edges are distinct and form one m-cycle."""
    idx = np.asarray(idx, dtype=np.int64)
    S, m = idx.shape
    if S == 0:
        return 0
    s = np.sort(idx, axis=1)
    ok = np.all(s[:, 1:] != s[:, :-1], axis=1)
    U = np.asarray(eu, dtype=np.int64)[idx]
    V = np.asarray(ev, dtype=np.int64)[idx]
    w = np.sort(np.concatenate([U, V], axis=1), axis=1)
    ok &= np.all(w[:, 0::2] == w[:, 1::2], axis=1)
    ok &= np.all(w[:, 1:-1:2] != w[:, 2::2], axis=1)
    U, V = U[ok], V[ok]
    k = U.shape[0]
    if k == 0:
        return 0
    one = np.uint64(1)
    A = np.zeros((k, n), dtype=np.uint64)
    rows = np.arange(k)
    for j in range(m):
        A[rows, U[:, j]] |= one << V[:, j].astype(np.uint64)
        A[rows, V[:, j]] |= one << U[:, j].astype(np.uint64)
    reach = one << U[:, 0].astype(np.uint64)
    for _ in range(m // 2):
        grown = reach.copy()
        for v in range(n):
            hit = ((reach >> np.uint64(v)) & one).astype(bool)
            grown[hit] |= A[hit, v]
        reach = grown
    return int(np.count_nonzero(np.bitwise_count(reach) == m))
