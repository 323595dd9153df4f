# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Semantics mirror ``cyclemass._purepy`` exactly."""

from libc.stdint cimport uint64_t, int64_t

ctypedef uint64_t mask_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    MAXN = 32


cdef inline int popcount(mask_t x) noexcept nogil:
    return __builtin_popcountll(x)


# --------------------------------------------------------------------------
# cycles

cdef void _extend(mask_t* adj, int m, int depth, mask_t used, int last,
                  mask_t root_adj, int* path, list out):
    cdef mask_t cand, low
    cdef int v, i
    if depth == m:
        if (root_adj >> last) & 1 and path[1] < last:
            out.append(tuple([path[i] for i in range(m)]))
        return
    cand = adj[last] & ~used
    while cand:
        v = __builtin_ctzll(cand)
        low = (<mask_t>1) << v
        cand ^= low
        path[depth] = v
        _extend(adj, m, depth + 1, used | low, v, root_adj, path, out)


def simple_cycles(adj, int n, int m):
    cdef mask_t cadj[MAXN]
    cdef int path[MAXN]
    cdef int r
    cdef mask_t below
    cdef list out = []
    if m < 3 or m > n:
        return out
    for r in range(n):
        cadj[r] = <mask_t>adj[r]
    for r in range(n - m + 1):
        below = ((<mask_t>1) << (r + 1)) - 1 if r < 63 else ~(<mask_t>0)
        if popcount(cadj[r] & ~below) < 2:
            continue
        path[0] = r
        _extend(cadj, m, 1, below, r, cadj[r], path, out)
    return out


# --------------------------------------------------------------------------
# canonical labelling

cdef int _cmp_sig(int* a, int* b, int k) noexcept nogil:
    cdef int i
    for i in range(k):
        if a[i] != b[i]:
            return -1 if a[i] < b[i] else 1
    return 0


cdef void _refine(mask_t* adj, int* verts, int* cstart, int* clen,
                  int* ncells) noexcept nogil:
    cdef mask_t masks[MAXN]
    cdef int sig[MAXN][MAXN]
    cdef int nverts[MAXN]
    cdef int nstart[MAXN]
    cdef int nlen[MAXN]
    cdef int order[MAXN]
    cdef int nc, c, i, j, k, v, s, L, pos, split, t
    while True:
        nc = ncells[0]
        for c in range(nc):
            masks[c] = 0
            for i in range(cstart[c], cstart[c] + clen[c]):
                masks[c] |= (<mask_t>1) << verts[i]
        split = 0
        k = 0
        pos = 0
        for c in range(nc):
            s = cstart[c]
            L = clen[c]
            if L == 1:
                nverts[pos] = verts[s]
                nstart[k] = pos
                nlen[k] = 1
                k += 1
                pos += 1
                continue
            for i in range(L):
                v = verts[s + i]
                for j in range(nc):
                    sig[i][j] = popcount(adj[v] & masks[j])
                order[i] = i
            # stable insertion sort on signatures
            for i in range(1, L):
                t = order[i]
                j = i - 1
                while j >= 0 and _cmp_sig(sig[order[j]], sig[t], nc) > 0:
                    order[j + 1] = order[j]
                    j -= 1
                order[j + 1] = t
            nstart[k] = pos
            nlen[k] = 0
            for i in range(L):
                if i > 0 and _cmp_sig(sig[order[i - 1]], sig[order[i]], nc) != 0:
                    split = 1
                    k += 1
                    nstart[k] = pos
                    nlen[k] = 0
                nverts[pos] = verts[s + order[i]]
                nlen[k] += 1
                pos += 1
            k += 1
        for i in range(pos):
            verts[i] = nverts[i]
        for c in range(k):
            cstart[c] = nstart[c]
            clen[c] = nlen[c]
        ncells[0] = k
        if not split:
            return


cdef mask_t _leaf_key(mask_t* adj, int* perm, int n) noexcept nogil:
    cdef mask_t key = 0
    cdef int i, j
    for j in range(1, n):
        for i in range(j):
            key = (key << 1) | ((adj[perm[j]] >> perm[i]) & 1)
    return key


cdef void _search(mask_t* adj, int n, int* verts_in, int* cstart_in,
                  int* clen_in, int ncells, mask_t* best_key, int* best_perm,
                  int* have_best) noexcept nogil:
    cdef int verts[MAXN]
    cdef int cstart[MAXN]
    cdef int clen[MAXN]
    cdef int nverts[MAXN]
    cdef int ncstart[MAXN]
    cdef int nclen[MAXN]
    cdef int tried[MAXN]
    cdef int ntried = 0
    cdef int i, c, t, v, u, q, s, L, skip, nc2, pos
    cdef mask_t key
    for i in range(n):
        verts[i] = verts_in[i]
    for c in range(ncells):
        cstart[c] = cstart_in[c]
        clen[c] = clen_in[c]
    _refine(adj, verts, cstart, clen, &ncells)
    t = -1
    for c in range(ncells):
        if clen[c] > 1:
            t = c
            break
    if t < 0:
        key = _leaf_key(adj, verts, n)
        if not have_best[0] or key < best_key[0]:
            have_best[0] = 1
            best_key[0] = key
            for i in range(n):
                best_perm[i] = verts[i]
        return
    s = cstart[t]
    L = clen[t]
    for i in range(L):
        v = verts[s + i]
        skip = 0
        for q in range(ntried):
            u = tried[q]
            if (adj[u] & ~((<mask_t>1) << v)) == (adj[v] & ~((<mask_t>1) << u)):
                skip = 1
                break
        if skip:
            continue
        tried[ntried] = v
        ntried += 1
        # cells[:t] + [[v], rest] + cells[t+1:]
        for q in range(n):
            nverts[q] = verts[q]
        nverts[s] = v
        pos = s + 1
        for q in range(L):
            if verts[s + q] != v:
                nverts[pos] = verts[s + q]
                pos += 1
        nc2 = 0
        for c in range(ncells):
            if c == t:
                ncstart[nc2] = s
                nclen[nc2] = 1
                nc2 += 1
                ncstart[nc2] = s + 1
                nclen[nc2] = L - 1
            else:
                ncstart[nc2] = cstart[c]
                nclen[nc2] = clen[c]
            nc2 += 1
        _search(adj, n, nverts, ncstart, nclen, nc2, best_key, best_perm,
                have_best)


def canonical_labeling(adj, int n):
    cdef mask_t cadj[MAXN]
    cdef int verts[MAXN]
    cdef int cstart[MAXN]
    cdef int clen[MAXN]
    cdef int best_perm[MAXN]
    cdef mask_t best_key = 0
    cdef int have_best = 0
    cdef int i, d, pos, nc
    if n == 0:
        return 0, []
    if n > 11:
        raise ValueError("canonical_labeling kernel supports n <= 11")
    for i in range(n):
        cadj[i] = <mask_t>adj[i]
    degs = [popcount(cadj[i]) for i in range(n)]
    pos = 0
    nc = 0
    for d in sorted(set(degs)):
        cstart[nc] = pos
        clen[nc] = 0
        for i in range(n):
            if degs[i] == d:
                verts[pos] = i
                pos += 1
                clen[nc] += 1
        nc += 1
    with nogil:
        _search(cadj, n, verts, cstart, clen, nc, &best_key, best_perm,
                &have_best)
    return int(best_key), [best_perm[i] for i in range(n)]


# --------------------------------------------------------------------------
# Monte Carlo success test

def mc_successes(eu, ev, idx, int n):
    cdef const int64_t[:] U = eu
    cdef const int64_t[:] V = ev
    cdef const int64_t[:, :] I = idx
    cdef Py_ssize_t S = I.shape[0]
    cdef int m = <int>I.shape[1]
    cdef Py_ssize_t s
    cdef int j, k, e, a, b, ok, v, steps
    cdef mask_t adjm[64]
    cdef mask_t seen_e, verts, reach, grown, r
    cdef int deg[64]
    cdef long long hits = 0
    with nogil:
        for s in range(S):
            ok = 1
            verts = 0
            for j in range(m):
                e = <int>I[s, j]
                a = <int>U[e]
                b = <int>V[e]
                if not ((verts >> a) & 1):
                    deg[a] = 0
                    adjm[a] = 0
                    verts |= (<mask_t>1) << a
                if not ((verts >> b) & 1):
                    deg[b] = 0
                    adjm[b] = 0
                    verts |= (<mask_t>1) << b
                if (adjm[a] >> b) & 1:
                    ok = 0  # repeated edge
                    break
                adjm[a] |= (<mask_t>1) << b
                adjm[b] |= (<mask_t>1) << a
                deg[a] += 1
                deg[b] += 1
            if not ok or popcount(verts) != m:
                continue
            r = verts
            while r:
                v = __builtin_ctzll(r)
                r &= r - 1
                if deg[v] != 2:
                    ok = 0
                    break
            if not ok:
                continue
            reach = (<mask_t>1) << __builtin_ctzll(verts)
            for steps in range(m // 2):
                grown = reach
                r = reach
                while r:
                    v = __builtin_ctzll(r)
                    r &= r - 1
                    grown |= adjm[v]
                reach = grown
            if reach == verts:
                hits += 1
    return int(hits)
