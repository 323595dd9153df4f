"""Maximise the cycle objective over masses supported on a fixed graph.

The update is the growth transform

    mu+(e) = sum_{C containing e} mu(C) / (m * beta(mu; m)),

which keeps mu on the simplex, never decreases beta (beta is homogeneous of
degree m with nonnegative coefficients), and whose fixed points are exactly the
stationarity identities ``m*beta*mu(e) = sum_{C ∋ e} mu(C)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .errors import DeadSupport, EmptySearch, InvalidParameter, UnsupportedSize
from .graphs import (
    GENERATE_MAX,
    SmallGraph,
    canonical_form,
    canonical_relabel,
    enumerate_cycles,
    enumerate_graphs,
    from_edges,
    to_graph6,
)
from .mass import EdgeMass, beta, stats, support_cycles

PROVEN_M = frozenset({3, 4, 5, 6})

__all__ = [
    "AscentConfig",
    "AscentReport",
    "StationarityReport",
    "SearchReport",
    "CandidateResult",
    "edge_cycle_mass",
    "vertex_cycle_mass",
    "ascent_step",
    "verify_stationarity",
    "prune_dead_edges",
    "optimize_on_support",
    "search_opt",
]


@dataclass(frozen=True)
class AscentConfig:
    max_iterations: int = 100_000
    tol: float = 1e-12
    restarts: int = 32
    seed: int = 0
    # a run "keeps full support" if every edge ends at or above this mass
    support_floor: float = 1e-6
    uniform_start: bool = False

    def __post_init__(self):
        if not self.tol > 0:
            raise InvalidParameter("tolerance must be positive")
        if self.restarts < 1:
            raise InvalidParameter("need at least one restart")
        if self.max_iterations < 0:
            raise InvalidParameter("max_iterations must be nonnegative")


@dataclass(frozen=True)
class StationarityReport:
    edge_residual: float
    vertex_residual: float
    edge_residuals: dict
    vertex_residuals: dict
    tol: float | None = None

    @property
    def max_residual(self):
        return max(self.edge_residual, self.vertex_residual)

    @property
    def ok(self) -> bool:
        return self.tol is not None and self.max_residual <= self.tol


@dataclass(frozen=True)
class RunSummary:
    start: str
    beta: float
    iterations: int
    converged: bool
    full_support: bool
    residual: float


@dataclass(frozen=True)
class AscentReport:
    mass: EdgeMass | None
    beta: float
    iterations: int
    converged: bool
    stationarity: StationarityReport | None
    support: SmallGraph
    effective_support: SmallGraph | None
    full_support_beta: float | None = None
    full_support_mass: EdgeMass | None = None
    runs: tuple = ()

    @property
    def edge_residuals(self):
        return {} if self.stationarity is None else self.stationarity.edge_residuals

    @property
    def vertex_residuals(self):
        return {} if self.stationarity is None else self.stationarity.vertex_residuals


def edge_cycle_mass(mu: EdgeMass, m: int) -> dict:
    """For every support edge, the total mass of the m-cycles through it."""
    out = {e: mu.zero for e in mu.support}
    one = Fraction(1) if mu.exact else 1.0
    w = mu.weights()
    for cyc in support_cycles(mu, m):
        p = one
        for e in cyc:
            p *= w[e]
        for e in cyc:
            out[e] += p
    return out


def vertex_cycle_mass(mu: EdgeMass, m: int) -> dict:
    """For every vertex of positive weighted degree, the mass of m-cycles through it."""
    out = {x: mu.zero for x in stats(mu).vertex_support}
    one = Fraction(1) if mu.exact else 1.0
    w = mu.weights()
    for cyc in support_cycles(mu, m):
        p = one
        for e in cyc:
            p *= w[e]
        for x in {v for e in cyc for v in e}:
            out[x] += p
    return out


def ascent_step(mu: EdgeMass, m: int) -> EdgeMass:
    b = beta(mu, m)
    if b == 0:
        raise DeadSupport("beta vanishes on this support; reseed")
    scale = m * b
    return EdgeMass(
        mu.n, {e: x / scale for e, x in edge_cycle_mass(mu, m).items()}, exact=mu.exact
    )


def verify_stationarity(mu: EdgeMass, m: int, tol=None) -> StationarityReport:
    """Residuals of both stationarity identities, each normalised by ``m*beta``.

    Edge: ``|mu(e) - ecm(e)/(m beta)|``; vertex:
    ``|wdeg(x) - 2 vcm(x)/(m beta)|``.  Exact masses give exact residuals.
    """
    b = beta(mu, m)
    if b == 0:
        raise DeadSupport("beta vanishes; stationarity is undefined")
    scale = m * b
    ecm = edge_cycle_mass(mu, m)
    er = {e: abs(mu[e] - ecm[e] / scale) for e in mu.support}
    deg = stats(mu).weighted_degree
    vcm = vertex_cycle_mass(mu, m)
    vr = {x: abs(deg[x] - 2 * c / scale) for x, c in vcm.items()}
    return StationarityReport(
        edge_residual=max(er.values(), default=mu.zero),
        vertex_residual=max(vr.values(), default=mu.zero),
        edge_residuals=er,
        vertex_residuals=vr,
        tol=tol,
    )


def prune_dead_edges(G: SmallGraph, m: int) -> SmallGraph:
    """Drop the edges of ``G`` lying on no m-cycle."""
    live = {e for c in enumerate_cycles(G, m) for e in c.edges}
    return from_edges(G.n, sorted(live))


# --------------------------------------------------------------------------
# batched float ascent


class _CycleIndex:
    def __init__(self, G: SmallGraph, m: int):
        self.edges = G.edges
        pos = {e: i for i, e in enumerate(self.edges)}
        cycles = enumerate_cycles(G, m)
        self.cyc = np.array([[pos[e] for e in c.edges] for c in cycles], dtype=np.intp)
        self.inc = np.zeros((len(cycles), len(self.edges)))
        if len(cycles):
            np.put_along_axis(self.inc, self.cyc, 1.0, axis=1)
        self.m = m

    def objective(self, X):
        P = np.prod(X[:, self.cyc], axis=2)
        return P, P.sum(axis=1)

    def step(self, X):
        P, b = self.objective(X)
        return (P @ self.inc) / (self.m * b)[:, None], b


def _run_batch(idx: _CycleIndex, X: np.ndarray, cfg: AscentConfig):
    R = X.shape[0]
    iters = np.zeros(R, dtype=np.int64)
    done = np.zeros(R, dtype=bool)
    res = np.full(R, np.inf)
    active = np.arange(R)
    for _ in range(cfg.max_iterations):
        if active.size == 0:
            break
        Xa = X[active]
        Xn, _ = idx.step(Xa)
        Xn /= Xn.sum(axis=1, keepdims=True)
        r = np.max(np.abs(Xn - Xa), axis=1)
        X[active] = Xn
        iters[active] += 1
        res[active] = r
        fin = r <= cfg.tol
        done[active[fin]] = True
        active = active[~fin]
    _, b = idx.objective(X)
    return X, b, iters, done, res


def _mass_from_vector(n, edges, x) -> EdgeMass:
    x = np.asarray(x, dtype=float)
    x = x / x.sum()
    return EdgeMass(n, {e: float(v) for e, v in zip(edges, x) if v > 0}, exact=False)


def optimize_on_support(G: SmallGraph, m: int, cfg: AscentConfig | None = None) -> AscentReport:
    """Best-of-restarts growth-transform ascent over masses supported in ``G``.

    Edges on no m-cycle are removed first.  Starts are symmetric Dirichlet(1)
    draws, plus the uniform mass when ``cfg.uniform_start`` is set.  The
    report also records the best run that kept every edge at or above
    ``cfg.support_floor`` (``full_support_beta``).
    """
    cfg = cfg or AscentConfig()
    if m < 3:
        raise InvalidParameter("cycle length must be at least 3")
    H = prune_dead_edges(G, m) if G.n >= m else from_edges(G.n, ())
    if H.num_edges == 0:
        mass = None
        if G.num_edges:
            w = 1.0 / G.num_edges
            mass = EdgeMass(G.n, {e: w for e in G.edges}, exact=False)
        return AscentReport(
            mass=mass, beta=0.0, iterations=0, converged=True, stationarity=None,
            support=H, effective_support=None,
        )
    idx = _CycleIndex(H, m)
    E = len(idx.edges)
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    starts = rng.dirichlet(np.ones(E), size=cfg.restarts)
    labels = [f"dirichlet[{i}]" for i in range(cfg.restarts)]
    if cfg.uniform_start:
        starts = np.vstack([np.full((1, E), 1.0 / E), starts])
        labels.insert(0, "uniform")
    X, b, iters, done, res = _run_batch(idx, starts, cfg)
    full = X.min(axis=1) >= cfg.support_floor
    runs = tuple(
        RunSummary(labels[i], float(b[i]), int(iters[i]), bool(done[i]), bool(full[i]), float(res[i]))
        for i in range(len(labels))
    )
    # ties resolve to the earliest start
    best = int(np.argmax(b))
    mass = _mass_from_vector(H.n, idx.edges, X[best])
    eff = from_edges(H.n, [e for e, v in zip(idx.edges, X[best]) if v >= cfg.support_floor])
    fb = fm = None
    if full.any():
        j = int(np.flatnonzero(full)[np.argmax(b[full])])
        fb = float(b[j])
        fm = _mass_from_vector(H.n, idx.edges, X[j])
    return AscentReport(
        mass=mass,
        beta=float(b[best]),
        iterations=int(iters[best]),
        converged=bool(done[best]),
        stationarity=verify_stationarity(mass, m, cfg.tol),
        support=H,
        effective_support=eff,
        full_support_beta=fb,
        full_support_mass=fm,
        runs=runs,
    )


# --------------------------------------------------------------------------
# support search


@dataclass(frozen=True)
class CandidateResult:
    graph6: str
    graph: SmallGraph
    num_edges: int
    beta: float | None
    best_beta: float
    collapsed_to: str | None
    converged: bool
    iterations: int
    residual: float

    @property
    def sort_beta(self):
        return -np.inf if self.beta is None else self.beta

    def record(self) -> dict:
        return {
            "graph6": self.graph6,
            "edges": self.num_edges,
            "beta": self.beta,
            "best_beta": self.best_beta,
            "collapsed_to": self.collapsed_to,
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class SearchReport:
    m: int
    n_range: tuple
    best_graph: SmallGraph
    best_graph6: str
    best_canonical: bytes
    best_mass: EdgeMass
    best_beta: float
    table: tuple = field(default=())
    exploratory: bool = False


def _compress(G: SmallGraph) -> SmallGraph:
    """Drop isolated vertices, keeping the relative order of the others."""
    keep = [v for v in range(G.n) if G.adj[v]]
    pos = {v: i for i, v in enumerate(keep)}
    return from_edges(len(keep), [(pos[u], pos[v]) for u, v in G.edges])


def candidate_supports(m: int, n_range) -> list[SmallGraph]:
    """Distinct pruned supports: connected, min degree 2, every edge on an m-cycle."""
    seen = {}
    for n in sorted(set(n_range)):
        if n > GENERATE_MAX:
            raise UnsupportedSize(f"support search supports n <= {GENERATE_MAX}")
        if n < m:
            continue
        for G in enumerate_graphs(n, min_degree=2, connected=True):
            H = prune_dead_edges(G, m)
            if H.num_edges == 0:
                continue
            H = canonical_relabel(_compress(H))
            seen.setdefault(canonical_form(H), H)
    return list(seen.values())


def search_opt(m: int, n_range, cfg: AscentConfig | None = None, workers: int = 1) -> SearchReport:
    """Optimise every candidate support and rank them.

    A candidate's ``beta`` is the best value found among runs that keep every
    one of its edges (the support is exactly that graph); runs that drift to
    the boundary are recorded under ``collapsed_to`` and credited to the
    smaller graph, which is itself a candidate.
    """
    cfg = replace(cfg or AscentConfig(), uniform_start=True)
    n_range = tuple(n_range)
    cands = candidate_supports(m, n_range)
    if not cands:
        raise EmptySearch(f"no candidate supports for m={m}, n in {n_range}")

    def solve(H):
        rep = optimize_on_support(H, m, cfg)
        collapsed = None
        if rep.effective_support is not None and rep.effective_support.num_edges < H.num_edges:
            collapsed = canonical_form(_compress(rep.effective_support)).decode()
        res = rep.stationarity.max_residual if rep.stationarity is not None else 0.0
        return CandidateResult(
            graph6=to_graph6(H),
            graph=H,
            num_edges=H.num_edges,
            beta=rep.full_support_beta,
            best_beta=rep.beta,
            collapsed_to=collapsed,
            converged=rep.converged,
            iterations=rep.iterations,
            residual=float(res),
        ), rep

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            solved = list(pool.map(solve, cands))
    else:
        solved = [solve(H) for H in cands]
    solved.sort(key=lambda t: (-t[0].sort_beta, t[0].graph6))
    table = tuple(r for r, _ in solved)
    top, top_rep = solved[0]
    if top.beta is None:
        raise EmptySearch("no run kept a full support")
    return SearchReport(
        m=m,
        n_range=n_range,
        best_graph=top.graph,
        best_graph6=top.graph6,
        best_canonical=canonical_form(top.graph),
        best_mass=top_rep.full_support_mass,
        best_beta=top.beta,
        table=table,
        exploratory=m not in PROVEN_M,
    )
