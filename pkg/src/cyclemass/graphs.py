"""Small simple graphs on at most 32 vertices, stored as neighbour bitsets.

Besides the basic container this module provides named constructors, cycle
enumeration, an isomorphism-invariant key, exhaustive generation of
non-isomorphic graphs, and graph6 (de)serialisation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import kernels
from .errors import InvalidParameter, ParseError, UnsupportedSize

MAX_VERTICES = 32
CANON_MAX = 10
GENERATE_MAX = 8

__all__ = [
    "SmallGraph",
    "CycleCopy",
    "CycleSet",
    "from_edges",
    "empty_graph",
    "path_graph",
    "star_graph",
    "cycle_graph",
    "complete_graph",
    "complete_bipartite",
    "cartesian_product",
    "enumerate_cycles",
    "canonical_form",
    "canonical_relabel",
    "is_isomorphic",
    "enumerate_graphs",
    "to_graph6",
    "parse_graph6",
    "read_graph6_file",
    "write_graph6_file",
]


def _pair(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SmallGraph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbour bitset of ``v``.  Instances are immutable and
    compare equal iff they have the same vertex count and edge set.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise InvalidParameter(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise InvalidParameter("adjacency length does not match n")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise InvalidParameter(f"vertex {u} has a neighbour outside 0..{self.n - 1}")
            if row >> u & 1:
                raise InvalidParameter(f"loop at vertex {u}")
            r = row
            while r:
                low = r & -r
                v = low.bit_length() - 1
                if not self.adj[v] >> u & 1:
                    raise InvalidParameter(f"asymmetric adjacency between {u} and {v}")
                r ^= low

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        out = []
        for u, row in enumerate(self.adj):
            r = row >> (u + 1)
            v = u + 1
            while r:
                if r & 1:
                    out.append((u, v))
                r >>= 1
                v += 1
        return tuple(out)

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u, v) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v) -> list[int]:
        return [u for u in range(self.n) if self.adj[v] >> u & 1]

    def degree(self, v) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def is_regular(self, k=None) -> bool:
        d = set(self.degrees())
        if k is None:
            return len(d) <= 1
        return d <= {k}

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            grown = 0
            f = frontier
            while f:
                low = f & -f
                grown |= self.adj[low.bit_length() - 1]
                f ^= low
            frontier = grown & ~seen
            seen |= grown
        return seen == (1 << self.n) - 1

    def relabel(self, perm: Sequence[int]) -> "SmallGraph":
        """Graph whose vertex ``i`` is the old vertex ``perm[i]``."""
        inv = [0] * self.n
        for i, v in enumerate(perm):
            inv[v] = i
        return from_edges(self.n, [(inv[u], inv[v]) for u, v in self.edges])

    def without_edges(self, drop: Iterable[tuple[int, int]]) -> "SmallGraph":
        drop = {_pair(u, v) for u, v in drop}
        return from_edges(self.n, [e for e in self.edges if e not in drop])

    def __repr__(self):
        return f"SmallGraph(n={self.n}, edges={list(self.edges)})"


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> SmallGraph:
    if not 0 <= n <= MAX_VERTICES:
        raise InvalidParameter(f"vertex count {n} outside 0..{MAX_VERTICES}")
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise InvalidParameter(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidParameter(f"edge ({u}, {v}) outside 0..{n - 1}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return SmallGraph(n, tuple(adj))


def empty_graph(n: int) -> SmallGraph:
    return from_edges(n, ())


def path_graph(n: int) -> SmallGraph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> SmallGraph:
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cycle_graph(m: int) -> SmallGraph:
    if m < 3:
        raise InvalidParameter("a cycle needs at least 3 vertices")
    return from_edges(m, [(i, (i + 1) % m) for i in range(m)])


def complete_graph(n: int) -> SmallGraph:
    return from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> SmallGraph:
    if a < 0 or b < 0:
        raise InvalidParameter("part sizes must be nonnegative")
    return from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def cartesian_product(G: SmallGraph, H: SmallGraph) -> SmallGraph:
    """Box product; vertex ``(g, h)`` gets index ``g * H.n + h``."""
    if G.n * H.n > MAX_VERTICES:
        raise InvalidParameter(f"product has {G.n * H.n} > {MAX_VERTICES} vertices")
    edges = []
    for g in range(G.n):
        for h1, h2 in H.edges:
            edges.append((g * H.n + h1, g * H.n + h2))
    for g1, g2 in G.edges:
        for h in range(H.n):
            edges.append((g1 * H.n + h, g2 * H.n + h))
    return from_edges(G.n * H.n, edges)


# --------------------------------------------------------------------------
# cycles


@dataclass(frozen=True, order=True)
class CycleCopy:
    """One unlabelled copy of C_m, stored in canonical rotation/reflection.

    ``vertices[0]`` is the smallest vertex and ``vertices[1] < vertices[-1]``.
    """

    vertices: tuple[int, ...]

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "CycleCopy":
        seq = list(seq)
        if len(set(seq)) != len(seq) or len(seq) < 3:
            raise InvalidParameter("cycle needs at least 3 distinct vertices")
        i = seq.index(min(seq))
        seq = seq[i:] + seq[:i]
        if seq[1] > seq[-1]:
            seq = [seq[0]] + seq[:0:-1]
        return cls(tuple(seq))

    @property
    def m(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        vs = self.vertices
        return tuple(sorted(_pair(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))))

    def as_graph(self, n: int) -> SmallGraph:
        return from_edges(n, self.edges)


class CycleSet(Sequence):
    """The copies of C_m in a host graph, in canonical lexicographic order."""

    def __init__(self, m: int, copies: Sequence[CycleCopy]):
        self.m = m
        self._copies = tuple(copies)

    def __len__(self):
        return len(self._copies)

    def __getitem__(self, i):
        return self._copies[i]

    def __iter__(self) -> Iterator[CycleCopy]:
        return iter(self._copies)

    def __repr__(self):
        return f"CycleSet(m={self.m}, count={len(self)})"


def enumerate_cycles(G: SmallGraph, m: int) -> CycleSet:
    """Every copy of C_m in ``G`` exactly once.

    Rooted DFS from the smallest vertex of each copy, extending only to larger
    vertices; reflections are removed by requiring ``second < last``.
    """
    if m < 3:
        raise InvalidParameter("cycle length must be at least 3")
    if m > G.n:
        return CycleSet(m, ())
    raw = kernels.simple_cycles(G.adj, G.n, m)
    return CycleSet(m, [CycleCopy(c) for c in raw])


# --------------------------------------------------------------------------
# isomorphism


def _check_canon_size(G):
    if G.n > CANON_MAX:
        raise UnsupportedSize(f"canonical form supports n <= {CANON_MAX}, got {G.n}")


def canonical_relabel(G: SmallGraph) -> SmallGraph:
    """Canonical representative of the isomorphism class of ``G``."""
    _check_canon_size(G)
    _, perm = kernels.canonical_labeling(G.adj, G.n)
    return G.relabel(perm)


def canonical_form(G: SmallGraph) -> bytes:
    """Isomorphism-invariant key: the graph6 encoding of the canonical relabelling."""
    return to_graph6(canonical_relabel(G)).encode("ascii")


def is_isomorphic(G: SmallGraph, H: SmallGraph) -> bool:
    if G.n != H.n or G.num_edges != H.num_edges:
        return False
    if sorted(G.degrees()) != sorted(H.degrees()):
        return False
    return canonical_form(G) == canonical_form(H)


def enumerate_graphs(
    n: int,
    min_degree: int = 0,
    connected: bool = False,
    max_degree: int | None = None,
) -> list[SmallGraph]:
    """All pairwise non-isomorphic graphs on ``n`` vertices passing the filters.

    Classes are grown one edge at a time with canonical dedup at each level;
    ``max_degree`` prunes during growth since degrees never decrease.
    Representatives are canonically labelled and ordered by
    ``(edge count, graph6)``.
    """
    if n > GENERATE_MAX:
        raise UnsupportedSize(f"graph generation supports n <= {GENERATE_MAX}, got {n}")
    if n < 0:
        raise InvalidParameter("n must be nonnegative")
    cap = n - 1 if max_degree is None else max_degree
    pairs = [(u, v) for v in range(n) for u in range(v)]
    full = (1 << n) - 1
    level = {0: (0,) * n}
    found = []
    while level:
        for key, adj in level.items():
            if all(row.bit_count() >= min_degree for row in adj):
                if not connected or _connected_bits(adj, full):
                    found.append((key, adj))
        nxt = {}
        for adj in level.values():
            for u, v in pairs:
                if adj[u] >> v & 1:
                    continue
                if adj[u].bit_count() >= cap or adj[v].bit_count() >= cap:
                    continue
                grown = list(adj)
                grown[u] |= 1 << v
                grown[v] |= 1 << u
                k, perm = kernels.canonical_labeling(grown, n)
                if k not in nxt:
                    nxt[k] = _permuted(grown, perm)
        level = nxt
    graphs = [SmallGraph(n, adj) for _, adj in found]
    graphs.sort(key=lambda G: (G.num_edges, to_graph6(G)))
    return graphs


def _connected_bits(adj, full):
    if not adj:
        return True
    seen = frontier = 1
    while frontier:
        grown = 0
        while frontier:
            low = frontier & -frontier
            grown |= adj[low.bit_length() - 1]
            frontier ^= low
        frontier = grown & ~seen
        seen |= grown
    return seen == full


def _permuted(adj, perm):
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v] = i
    out = []
    for v in perm:
        row, r = 0, adj[v]
        while r:
            low = r & -r
            row |= 1 << inv[low.bit_length() - 1]
            r ^= low
        out.append(row)
    return tuple(out)


# --------------------------------------------------------------------------
# graph6

_GRAPH6_HEADER = ">>graph6<<"


def to_graph6(G: SmallGraph) -> str:
    """Standard graph6 text (no header, no newline)."""
    n = G.n
    bits = []
    for j in range(1, n):
        row = G.adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(63 + n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


def parse_graph6(text: str) -> SmallGraph:
    """Decode one graph6 string.  Errors carry the byte offset of the fault."""
    s = text.strip()
    base = 0
    if s.startswith(_GRAPH6_HEADER):
        s = s[len(_GRAPH6_HEADER):]
        base = len(_GRAPH6_HEADER)
    if not s:
        raise ParseError("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 byte {ch!r}", base + i)
    if s[0] == "~":
        raise ParseError(f"graphs above {MAX_VERTICES} vertices are not supported", base)
    n = ord(s[0]) - 63
    if n > MAX_VERTICES:
        raise ParseError(f"graph has {n} > {MAX_VERTICES} vertices", base)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = s[1:]
    if len(body) != nbytes:
        raise ParseError(
            f"expected {nbytes} data bytes for n={n}, found {len(body)}",
            base + 1 + min(len(body), nbytes),
        )
    bits = []
    for ch in body:
        val = ord(ch) - 63
        bits.extend((val >> (5 - t)) & 1 for t in range(6))
    if any(bits[nbits:]):
        raise ParseError("nonzero padding bits", base + len(s) - 1)
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return SmallGraph(n, tuple(adj))


def read_graph6_file(path) -> list[SmallGraph]:
    graphs = []
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                graphs.append(parse_graph6(line))
            except ParseError as exc:
                raise ParseError(f"line {lineno}: {exc}") from exc
    return graphs


def write_graph6_file(path, graphs: Iterable[SmallGraph]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for G in graphs:
            fh.write(to_graph6(G) + "\n")
