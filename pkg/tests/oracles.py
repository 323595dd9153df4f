"""Brute-force reference computations, independent of the package's algorithms."""

import itertools
import math
from fractions import Fraction


def count_cycles_brute(n, edges, m):
    """Count m-cycles by trying every m-subset and every ordering of it."""
    E = {frozenset(e) for e in edges}
    total = 0
    for S in itertools.combinations(range(n), m):
        first = S[0]
        for rest in itertools.permutations(S[1:]):
            if rest[0] > rest[-1]:
                continue
            seq = (first,) + rest
            if all(frozenset((seq[i], seq[(i + 1) % m])) in E for i in range(m)):
                total += 1
    return total


def is_single_cycle(edge_subset, m):
    """m distinct edges forming one m-cycle: 2-regular on m vertices and connected."""
    if len(set(edge_subset)) != m:
        return False
    deg = {}
    for u, v in edge_subset:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if len(deg) != m or any(d != 2 for d in deg.values()):
        return False
    adj = {v: set() for v in deg}
    for u, v in edge_subset:
        adj[u].add(v)
        adj[v].add(u)
    start = next(iter(adj))
    seen, stack = {start}, [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == m


def beta_brute(weights, m):
    """Sum of products over m-subsets of support edges that form an m-cycle."""
    items = [(e, w) for e, w in weights.items() if w != 0]
    total = 0
    for combo in itertools.combinations(items, m):
        if is_single_cycle([e for e, _ in combo], m):
            total += math.prod(w for _, w in combo)
    return total


def complete_cycle_count(n, m):
    return math.factorial(n) // (2 * m * math.factorial(n - m))


def f_direct(z, m):
    z = Fraction(z)
    return (Fraction(2) / (2 - z)) ** 4 * (Fraction(m - 4) / (m - 4 + z)) ** (m - 4) * (1 - z)


def count_cycles_nx(n, edges, m):
    """Count m-cycles with networkx's bounded simple-cycle search (for larger graphs)."""
    import networkx as nx

    H = nx.Graph()
    H.add_nodes_from(range(n))
    H.add_edges_from(edges)
    return sum(1 for c in nx.simple_cycles(H, length_bound=m) if len(c) == m)
