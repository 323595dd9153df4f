"""Edge blow-ups: every base edge ``uv`` becomes an independent bag joined to ``u`` and ``v``.

Base edges are not kept, so a 2m-cycle through the blow-up of C_m picks one
vertex from each bag and there are exactly ``prod(bag sizes)`` of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import CycleMassError, InvalidParameter
from .graphs import MAX_VERTICES, SmallGraph, enumerate_cycles, from_edges
from .mass import EdgeMass, beta, support_graph

__all__ = [
    "BlowupSpec",
    "BlowupGraph",
    "LeadingTerm",
    "uniform_blowup",
    "build_blowup",
    "count_long_cycles",
    "bag_sizes_for",
    "leading_term_check",
    "spec_mass",
    "spec_leading_term",
]


@dataclass(frozen=True)
class BlowupSpec:
    base: SmallGraph
    bag_sizes: tuple[tuple[tuple[int, int], int], ...]

    def __init__(self, base: SmallGraph, bag_sizes: Mapping):
        sizes = {}
        edges = set(base.edges)
        for (u, v), t in dict(bag_sizes).items():
            e = (u, v) if u < v else (v, u)
            if e not in edges:
                raise InvalidParameter(f"{e} is not an edge of the base graph")
            if int(t) != t or t < 0:
                raise InvalidParameter(f"bag size for {e} must be a nonnegative integer")
            sizes[e] = int(t)
        ordered = tuple((e, sizes.get(e, 0)) for e in base.edges)
        total = base.n + sum(t for _, t in ordered)
        if total > MAX_VERTICES:
            raise InvalidParameter(f"blow-up has {total} > {MAX_VERTICES} vertices")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "bag_sizes", ordered)

    @property
    def sizes(self) -> dict:
        return dict(self.bag_sizes)

    @property
    def bag_vertices(self) -> int:
        return sum(t for _, t in self.bag_sizes)

    @property
    def total_vertices(self) -> int:
        return self.base.n + self.bag_vertices


@dataclass(frozen=True)
class BlowupGraph:
    spec: BlowupSpec
    graph: SmallGraph
    # ("base", v) or ("bag", (u, v), i)
    labels: tuple

    def bag_of(self, x):
        lab = self.labels[x]
        return lab[1] if lab[0] == "bag" else None


def uniform_blowup(base: SmallGraph, t: int) -> BlowupSpec:
    return BlowupSpec(base, {e: t for e in base.edges})


def build_blowup(spec: BlowupSpec) -> BlowupGraph:
    """Base vertices keep their numbers; bags follow in base-edge order."""
    labels = [("base", v) for v in range(spec.base.n)]
    edges = []
    nxt = spec.base.n
    for (u, v), t in spec.bag_sizes:
        for i in range(t):
            labels.append(("bag", (u, v), i))
            edges.append((u, nxt))
            edges.append((v, nxt))
            nxt += 1
    return BlowupGraph(spec, from_edges(nxt, edges), tuple(labels))


def count_long_cycles(bg: BlowupGraph, m: int) -> int:
    """Number of C_{2m} copies in the blow-up.

    Also checks that no counted cycle uses two vertices of one bag (two
    bag-mates share both neighbours, which only closes a 4-cycle).
    """
    if 2 * m > bg.graph.n:
        return 0
    cycles = enumerate_cycles(bg.graph, 2 * m)
    if m >= 3:
        for c in cycles:
            bags = [bg.bag_of(x) for x in c.vertices if bg.bag_of(x) is not None]
            if len(bags) != len(set(bags)):
                raise CycleMassError(f"cycle {c.vertices} reuses a bag")
    return len(cycles)


def bag_sizes_for(mu: EdgeMass, n: int) -> dict:
    """``round(mu(e) * n)`` per support edge; exact halves round to even."""
    return {e: int(round(x * n)) for e, x in mu.items()}


@dataclass(frozen=True)
class LeadingTerm:
    m: int
    requested_n: int
    bag_sizes: dict
    realized_n: int
    count: int
    projection: object
    ratio: object

    def record(self) -> dict:
        return {
            "m": self.m,
            "requested_n": self.requested_n,
            "realized_n": self.realized_n,
            "bag_sizes": {f"{u}-{v}": t for (u, v), t in self.bag_sizes.items()},
            "count": self.count,
            "projection": self.projection,
            "ratio": self.ratio,
        }


def leading_term_check(mu: EdgeMass, m: int, n: int) -> LeadingTerm:
    """Compare the exact C_{2m} count of the blow-up with ``beta(mu; m) * n^m``.

    ``n`` in the projection is the number of bag vertices actually realised;
    base vertices are treated as the lower-order correction.
    """
    sizes = bag_sizes_for(mu, n)
    spec = BlowupSpec(support_graph(mu), sizes)
    bg = build_blowup(spec)
    count = count_long_cycles(bg, m)
    nb = spec.bag_vertices
    proj = beta(mu, m) * nb**m
    if proj == 0:
        ratio = None
    elif mu.exact:
        ratio = Fraction(count) / proj
    else:
        ratio = count / proj
    return LeadingTerm(m, n, sizes, nb, count, proj, ratio)


def spec_mass(spec: BlowupSpec) -> EdgeMass | None:
    """Bag sizes normalised into an exact edge mass (None if every bag is empty)."""
    total = spec.bag_vertices
    if total == 0:
        return None
    return EdgeMass(
        spec.base.n, {e: Fraction(t, total) for e, t in spec.bag_sizes if t}, exact=True
    )


def spec_leading_term(spec: BlowupSpec, m: int) -> LeadingTerm:
    """Leading-term comparison for a given spec, with the mass read off its bag sizes."""
    count = count_long_cycles(build_blowup(spec), m)
    mu = spec_mass(spec)
    nb = spec.bag_vertices
    proj = Fraction(0) if mu is None else beta(mu, m) * nb**m
    ratio = None if proj == 0 else Fraction(count) / proj
    return LeadingTerm(m, nb, spec.sizes, nb, count, proj, ratio)
