from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclemass.errors import DeadSupport, EmptySearch, InvalidParameter
from cyclemass.graphs import (
    cartesian_product,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    enumerate_cycles,
    from_edges,
    is_isomorphic,
    path_graph,
    star_graph,
)
from cyclemass.mass import EdgeMass, beta, stats, uniform_on_edges
from cyclemass.optimize import (
    AscentConfig,
    ascent_step,
    candidate_supports,
    edge_cycle_mass,
    optimize_on_support,
    prune_dead_edges,
    search_opt,
    verify_stationarity,
    vertex_cycle_mass,
)

PRISM = cartesian_product(complete_graph(3), complete_graph(2))


@st.composite
def interior_masses(draw, G):
    raw = draw(st.lists(st.integers(1, 30), min_size=G.num_edges, max_size=G.num_edges))
    total = sum(raw)
    return EdgeMass(G.n, {e: Fraction(r, total) for e, r in zip(G.edges, raw)})


def perturbed(G, delta, exact=True):
    E = G.edges
    w = {e: Fraction(1, len(E)) for e in E}
    w[E[0]] += delta
    w[E[1]] -= delta
    mu = EdgeMass(G.n, w)
    return mu if exact else mu.to_float()


# -- cycle masses ------------------------------------------------------------


def test_edge_cycle_mass_examples():
    ecm = edge_cycle_mass(uniform_on_edges(cycle_graph(5)), 5)
    assert set(ecm.values()) == {Fraction(1, 3125)}
    ecm = edge_cycle_mass(uniform_on_edges(complete_graph(5)), 5)
    assert len(ecm) == 10 and set(ecm.values()) == {Fraction(6, 10**5)}
    ecm = edge_cycle_mass(uniform_on_edges(path_graph(6)), 5)
    assert set(ecm.values()) == {0}


@given(interior_masses(complete_graph(5)))
def test_cycle_mass_sums(mu):
    # every cycle has m edges and m vertices
    b = beta(mu, 5)
    assert sum(edge_cycle_mass(mu, 5).values()) == 5 * b
    assert sum(vertex_cycle_mass(mu, 5).values()) == 5 * b


@given(interior_masses(complete_graph(5)))
def test_edge_cycle_mass_bounded_by_beta(mu):
    b = beta(mu, 5)
    assert all(0 <= c <= b for c in edge_cycle_mass(mu, 5).values())


# -- ascent ------------------------------------------------------------------


def test_uniform_cycle_is_fixed_point():
    for m in (5, 6):
        mu = uniform_on_edges(cycle_graph(m))
        assert ascent_step(mu, m) == mu


def test_uniform_k5_is_fixed_point():
    mu = uniform_on_edges(complete_graph(5))
    assert ascent_step(mu, 5) == mu
    rep = verify_stationarity(mu, 5)
    assert rep.edge_residual == 0 and rep.vertex_residual == 0


def test_dead_support():
    mu = uniform_on_edges(star_graph(4))
    with pytest.raises(DeadSupport):
        ascent_step(mu, 3)
    with pytest.raises(DeadSupport):
        verify_stationarity(mu, 3)


@settings(max_examples=40)
@given(st.sampled_from([(complete_graph(5), 5), (complete_graph(6), 6), (PRISM, 6), (complete_graph(4), 3)]), st.data())
def test_ascent_is_monotone(case, data):
    G, m = case
    mu = data.draw(interior_masses(G))
    before = beta(mu, m)
    after = beta(ascent_step(mu, m), m)
    assert after >= before
    nu = mu.to_float()
    for _ in range(20):
        nxt = ascent_step(nu, m)
        assert beta(nxt, m) >= beta(nu, m) * (1 - 1e-14)
        nu = nxt


@settings(max_examples=30)
@given(st.data())
def test_fixed_point_iff_zero_residual(data):
    G = data.draw(st.sampled_from([complete_graph(5), cycle_graph(5), complete_graph(4)]))
    mu = data.draw(st.one_of(st.just(uniform_on_edges(G)), interior_masses(G)))
    rep = verify_stationarity(mu, G.n if G.n >= 5 else 3)
    m = G.n if G.n >= 5 else 3
    assert (rep.edge_residual == 0) == (ascent_step(mu, m) == mu)


@given(interior_masses(complete_graph(5)))
def test_vertex_residual_controlled_by_edge_residual(mu):
    # the vertex identity is the sum of the edge identities at that vertex
    rep = verify_stationarity(mu, 5)
    deg = max(dict(enumerate(complete_graph(5).degrees())).values())
    assert rep.vertex_residual <= deg * rep.edge_residual
    if rep.edge_residual == 0:
        assert rep.vertex_residual == 0


def test_perturbed_k5_converges_to_five_cycle_value():
    mu = perturbed(complete_graph(5), Fraction(1, 1000), exact=False)
    prev = beta(mu, 5)
    for _ in range(10_000):
        mu = ascent_step(mu, 5)
        cur = beta(mu, 5)
        assert cur >= prev * (1 - 1e-14)
        prev = cur
    assert abs(prev - 5**-5) <= 1e-8


# -- stationarity ------------------------------------------------------------


def test_stationarity_exact_zero_on_uniform_cycles():
    for m in (5, 6):
        rep = verify_stationarity(uniform_on_edges(cycle_graph(m)), m, tol=1e-10)
        assert rep.edge_residual == 0 and rep.vertex_residual == 0 and rep.ok


def test_stationarity_detects_perturbed_k33():
    K33 = complete_bipartite(3, 3)
    w = {e: 1 / 9 for e in K33.edges}
    w[K33.edges[0]] += 1e-2
    total = sum(w.values())
    mu = EdgeMass(6, {e: x / total for e, x in w.items()})
    rep = verify_stationarity(mu, 6, tol=1e-10)
    assert rep.edge_residual > 1e-4
    assert not rep.ok


def test_stationarity_is_scale_free():
    # isolated padding vertices do not change the residuals
    a = verify_stationarity(perturbed(cycle_graph(6), Fraction(1, 100)), 6)
    b = verify_stationarity(
        EdgeMass(9, perturbed(cycle_graph(6), Fraction(1, 100)).weights()), 6
    )
    assert a.edge_residual == b.edge_residual


# -- optimisation ------------------------------------------------------------


def _linf_to_some_cycle(mu, G, m):
    best = np.inf
    for c in enumerate_cycles(G, m):
        on = set(c.edges)
        d = max(abs(float(mu[e]) - (1 / m if e in on else 0)) for e in G.edges)
        best = min(best, d)
    return best


def test_optimize_k5():
    rep = optimize_on_support(complete_graph(5), 5, AscentConfig(restarts=32))
    assert abs(rep.beta - 1 / 3125) <= 1e-8
    assert _linf_to_some_cycle(rep.mass, complete_graph(5), 5) <= 1e-4
    assert rep.stationarity.max_residual <= 1e-10
    assert is_isomorphic(rep.effective_support, cycle_graph(5))


def test_optimize_k6():
    rep = optimize_on_support(complete_graph(6), 6, AscentConfig(restarts=32))
    assert abs(rep.beta - 6**-6) <= 1e-8
    assert rep.converged and rep.stationarity.max_residual <= 1e-10


def test_optimize_k33_full_support_below_bound():
    rep = optimize_on_support(complete_bipartite(3, 3), 6, AscentConfig(restarts=32, uniform_start=True))
    assert rep.full_support_beta is not None
    assert rep.full_support_beta < 0.89 * 6**-6
    # runs that lose edges can reach the hexagon value; that belongs to C6 itself
    assert rep.beta <= 6**-6 + 1e-12


def test_optimize_tree_and_small_inputs():
    rep = optimize_on_support(path_graph(6), 5)
    assert rep.beta == 0 and rep.iterations == 0 and rep.stationarity is None
    rep = optimize_on_support(complete_graph(4), 5)
    assert rep.beta == 0
    with pytest.raises(InvalidParameter):
        optimize_on_support(complete_graph(4), 2)


def test_optimize_reproducible():
    cfg = AscentConfig(restarts=6, seed=5)
    a = optimize_on_support(PRISM, 6, cfg)
    b = optimize_on_support(PRISM, 6, cfg)
    assert a.mass == b.mass and a.runs == b.runs


def test_config_validation():
    with pytest.raises(InvalidParameter):
        AscentConfig(tol=0)
    with pytest.raises(InvalidParameter):
        AscentConfig(restarts=0)


def test_prune_dead_edges():
    G = from_edges(6, list(cycle_graph(5).edges) + [(0, 5)])
    assert prune_dead_edges(G, 5) == from_edges(6, cycle_graph(5).edges)


# -- search ------------------------------------------------------------------


def test_search_m5():
    rep = search_opt(5, [5], AscentConfig(restarts=32))
    assert is_isomorphic(rep.best_graph, cycle_graph(5))
    assert abs(rep.best_beta - 5**-5) <= 1e-8
    assert not rep.exploratory


def test_search_m6_regular_candidates_worse():
    rep = search_opt(6, [6], AscentConfig(restarts=32))
    assert is_isomorphic(rep.best_graph, cycle_graph(6))
    assert abs(rep.best_beta - 6**-6) <= 1e-8
    cubic = [r for r in rep.table if r.graph.is_regular(3)]
    assert len(cubic) == 2
    assert all(r.beta is None or r.beta < 0.89 * 6**-6 for r in cubic)
    keys = [(-r.sort_beta, r.graph6) for r in rep.table]
    assert keys == sorted(keys)


def test_search_m7_is_exploratory():
    rep = search_opt(7, [7], AscentConfig(restarts=8))
    assert rep.exploratory
    assert rep.best_beta > 0


def test_search_deterministic_across_workers():
    cfg = AscentConfig(restarts=4, seed=3)
    a = search_opt(6, [6], cfg)
    b = search_opt(6, [6], cfg, workers=3)
    assert [r.record() for r in a.table] == [r.record() for r in b.table]


def test_candidates_have_min_degree_two_and_live_edges():
    for H in candidate_supports(6, [6]):
        assert H.min_degree() >= 2 and H.is_connected()
        assert prune_dead_edges(H, 6) == H


def test_empty_search():
    with pytest.raises(EmptySearch):
        search_opt(7, [5, 6])
