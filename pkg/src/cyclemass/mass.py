"""Probability masses on the edges of a clique and the cycle-formation objective.

An :class:`EdgeMass` lives on the pairs of ``{0, ..., n-1}``; only pairs with
positive weight are stored.  Weights are either all :class:`fractions.Fraction`
(exact kind) or all ``float`` (float kind); conversion is always explicit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .errors import InvalidParameter, MassInvariantError, PreconditionViolation
from .graphs import MAX_VERTICES, SmallGraph, enumerate_cycles, from_edges

FLOAT_SUM_TOL = 2.0**-40
FLOAT_HANDSHAKE_TOL = 2.0**-38
MC_BLOCK = 1 << 16

__all__ = [
    "EdgeMass",
    "MassStats",
    "MonteCarloResult",
    "uniform_on_edges",
    "support_graph",
    "support_cycles",
    "beta",
    "subgraph_mass",
    "stats",
    "rescale_edge",
    "monte_carlo_cycle_probability",
]


def _pair(u, v):
    if u == v:
        raise InvalidParameter(f"pair ({u}, {v}) is a loop")
    return (u, v) if u < v else (v, u)


class EdgeMass:
    """Immutable probability mass on the pairs of an ``n``-vertex clique.

    ``weights`` maps vertex pairs to nonnegative weights; zero entries are
    dropped.  ``exact`` selects the scalar kind; when omitted it is inferred
    (all rational inputs give an exact mass).
    """

    __slots__ = ("n", "exact", "_w")

    def __init__(self, n: int, weights: Mapping | Iterable, exact: bool | None = None):
        if not 0 <= n <= MAX_VERTICES:
            raise InvalidParameter(f"vertex count {n} outside 0..{MAX_VERTICES}")
        items = weights.items() if isinstance(weights, Mapping) else weights
        raw = {}
        for (u, v), w in items:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameter(f"pair ({u}, {v}) outside 0..{n - 1}")
            key = _pair(u, v)
            if key in raw:
                raise InvalidParameter(f"pair {key} given twice")
            raw[key] = w
        if exact is None:
            exact = all(isinstance(w, Rational) for w in raw.values())
        conv = Fraction if exact else float
        if exact and not all(isinstance(w, Rational) for w in raw.values()):
            raise InvalidParameter("exact masses need rational weights; convert explicitly")
        w = {}
        for key in sorted(raw):
            x = conv(raw[key])
            if x < 0:
                raise MassInvariantError(f"negative weight {x} on {key}")
            if x != 0:
                w[key] = x
        total = sum(w.values(), conv(0))
        if exact:
            if total != 1:
                raise MassInvariantError(f"weights sum to {total}, not 1")
        elif not abs(total - 1.0) <= FLOAT_SUM_TOL:
            raise MassInvariantError(f"weights sum to {total!r}, not 1 within 2^-40")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "exact", bool(exact))
        object.__setattr__(self, "_w", w)

    def __setattr__(self, name, value):
        raise AttributeError("EdgeMass is immutable")

    @property
    def support(self) -> tuple[tuple[int, int], ...]:
        return tuple(self._w)

    def weights(self) -> dict:
        return dict(self._w)

    def items(self):
        return self._w.items()

    def __getitem__(self, pair):
        return self._w.get(_pair(*pair), self.zero)

    def __len__(self):
        return len(self._w)

    @property
    def zero(self):
        return Fraction(0) if self.exact else 0.0

    def to_float(self) -> "EdgeMass":
        return EdgeMass(self.n, {e: float(x) for e, x in self._w.items()}, exact=False)

    def to_exact(self) -> "EdgeMass":
        """Exact mass with the binary values of the float weights; they must sum to 1."""
        return EdgeMass(self.n, {e: Fraction(x) for e, x in self._w.items()}, exact=True)

    def vector(self, edges) -> np.ndarray:
        return np.array([float(self[e]) for e in edges], dtype=float)

    def __eq__(self, other):
        if not isinstance(other, EdgeMass):
            return NotImplemented
        return self.n == other.n and self.exact == other.exact and self._w == other._w

    def __hash__(self):
        return hash((self.n, self.exact, tuple(self._w.items())))

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        body = ", ".join(f"{u}-{v}: {w}" for (u, v), w in self._w.items())
        return f"EdgeMass(n={self.n}, {kind}, {{{body}}})"


@dataclass(frozen=True)
class MassStats:
    weighted_degree: tuple
    support_graph: SmallGraph
    support_size: int
    vertex_support_size: int

    @property
    def vertex_support(self) -> tuple[int, ...]:
        return tuple(x for x, d in enumerate(self.weighted_degree) if d > 0)


def uniform_on_edges(G: SmallGraph, n: int | None = None) -> EdgeMass:
    """The uniform distribution on E(G), exact kind."""
    edges = G.edges
    if not edges:
        raise InvalidParameter("uniform mass needs at least one edge")
    w = Fraction(1, len(edges))
    return EdgeMass(G.n if n is None else n, {e: w for e in edges}, exact=True)


def support_graph(mu: EdgeMass) -> SmallGraph:
    return from_edges(mu.n, mu.support)


@lru_cache(maxsize=4096)
def _cycles_as_edges(G: SmallGraph, m: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    return tuple(c.edges for c in enumerate_cycles(G, m))


def support_cycles(mu: EdgeMass, m: int):
    """Edge tuples of the m-cycles of the support graph, canonical order."""
    if m < 3:
        raise InvalidParameter("cycle length must be at least 3")
    return _cycles_as_edges(support_graph(mu), m)


def _prod(values, one):
    p = one
    for x in values:
        p *= x
    return p


def beta(mu: EdgeMass, m: int):
    """Sum over m-cycles C of the support graph of the product of mu(e), e in C.

    Exact for exact masses; zero when fewer than m vertices exist.
    """
    if m < 3:
        raise InvalidParameter("cycle length must be at least 3")
    one = Fraction(1) if mu.exact else 1.0
    if m > mu.n:
        return mu.zero
    w = mu._w
    total = mu.zero
    for cyc in support_cycles(mu, m):
        total += _prod((w[e] for e in cyc), one)
    return total


def subgraph_mass(mu: EdgeMass, G: SmallGraph):
    """Product of mu over E(G); zero if some edge of G carries no mass."""
    edges = G.edges
    if not edges:
        raise InvalidParameter("subgraph_mass needs a graph with at least one edge")
    one = Fraction(1) if mu.exact else 1.0
    return _prod((mu[e] for e in edges), one)


def stats(mu: EdgeMass) -> MassStats:
    deg = [mu.zero] * mu.n
    for (u, v), x in mu.items():
        deg[u] += x
        deg[v] += x
    return MassStats(
        weighted_degree=tuple(deg),
        support_graph=support_graph(mu),
        support_size=len(mu),
        vertex_support_size=sum(1 for d in deg if d > 0),
    )


def rescale_edge_factors(mu_e, m: int):
    """Return ``(a, b) = (2/(2 - m*mu_e), (m-4)/(m-4 + m*mu_e))``."""
    z = m * mu_e
    return 2 / (2 - z), (m - 4) / (m - 4 + z)


def rescale_edge(mu: EdgeMass, e, m: int, tol: float = 1e-12) -> EdgeMass:
    """Remove ``e`` and rescale the rest so the total stays 1.

    Pairs meeting ``e`` in one endpoint scale by ``a``, disjoint pairs by ``b``.
    Requires both endpoints of ``e`` to have weighted degree ``2/m``; for float
    masses the check uses absolute tolerance ``tol``.
    """
    if m not in (5, 6):
        raise InvalidParameter("edge rescaling is defined for m in {5, 6}")
    x, y = _pair(*e)
    mu_e = mu[(x, y)]
    if mu_e == 0:
        raise PreconditionViolation(f"edge {(x, y)} is not in the support")
    deg = stats(mu).weighted_degree
    target = Fraction(2, m) if mu.exact else 2.0 / m
    for v in (x, y):
        off = deg[v] - target
        if (mu.exact and off != 0) or (not mu.exact and abs(off) > tol):
            raise PreconditionViolation(
                f"weighted degree of {v} is {deg[v]}, need 2/{m}"
            )
    a, b = rescale_edge_factors(mu_e, m)
    out = {}
    for s, w in mu.items():
        if s == (x, y):
            continue
        touches = (s[0] in (x, y)) + (s[1] in (x, y))
        out[s] = (a if touches == 1 else b) * w
    return EdgeMass(mu.n, out, exact=mu.exact)


# --------------------------------------------------------------------------
# Monte Carlo


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    stderr: float
    successes: int
    samples: int
    seed: int

    def zscore(self, target: float) -> float:
        """Deviation from ``target`` in units of the target's binomial standard error."""
        sd = math.sqrt(target * (1 - target) / self.samples)
        if sd == 0:
            return 0.0 if self.estimate == target else math.inf
        return (self.estimate - target) / sd


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def _mc_block(cdf, eu, ev, n, m, seed, block, size):
    rng = _block_rng(seed, block)
    u = rng.random((size, m))
    idx = np.searchsorted(cdf, u, side="right")
    np.minimum(idx, len(cdf) - 1, out=idx)
    return kernels.mc_successes(eu, ev, idx.astype(np.int64, copy=False), n)


def monte_carlo_cycle_probability(
    mu: EdgeMass, m: int, samples: int, seed: int = 0, workers: int = 1
) -> MonteCarloResult:
    """Estimate P(m i.i.d. draws from mu are distinct and form an m-cycle).

    Its expectation is ``m! * beta(mu, m)``.  Samples are split into fixed
    blocks of 2**16, block ``b`` drawing from Philox keyed by
    ``SeedSequence(seed, spawn_key=(b,))``; the result does not depend on
    ``workers``.
    """
    if samples < 1:
        raise InvalidParameter("samples must be at least 1")
    if m < 3:
        raise InvalidParameter("cycle length must be at least 3")
    support = mu.support
    weights = np.array([float(x) for _, x in mu.items()])
    cdf = np.cumsum(weights)
    cdf /= cdf[-1]
    eu = np.array([u for u, _ in support], dtype=np.int64)
    ev = np.array([v for _, v in support], dtype=np.int64)
    blocks = [(b, min(MC_BLOCK, samples - b * MC_BLOCK)) for b in range(-(-samples // MC_BLOCK))]

    def run(job):
        b, size = job
        return _mc_block(cdf, eu, ev, mu.n, m, seed, b, size)

    if m > mu.n:
        hits = 0
    elif workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(run, blocks))
    else:
        hits = sum(map(run, blocks))
    p = hits / samples
    return MonteCarloResult(
        estimate=p,
        stderr=math.sqrt(p * (1 - p) / samples),
        successes=hits,
        samples=samples,
        seed=seed,
    )
