import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclemass.errors import InvalidParameter, MassInvariantError, PreconditionViolation
from cyclemass.graphs import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    from_edges,
    path_graph,
)
from cyclemass.mass import (
    EdgeMass,
    beta,
    monte_carlo_cycle_probability,
    rescale_edge,
    rescale_edge_factors,
    stats,
    subgraph_mass,
    support_cycles,
    support_graph,
    uniform_on_edges,
)
from oracles import beta_brute


@st.composite
def exact_masses(draw, max_n=7, max_edges=12):
    n = draw(st.integers(3, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=max_edges, unique=True))
    raw = draw(st.lists(st.integers(1, 20), min_size=len(chosen), max_size=len(chosen)))
    total = sum(raw)
    return EdgeMass(n, {e: Fraction(r, total) for e, r in zip(chosen, raw)})


# -- container ---------------------------------------------------------------


def test_sum_to_one_enforced():
    with pytest.raises(MassInvariantError):
        EdgeMass(3, {(0, 1): Fraction(1, 2), (1, 2): Fraction(1, 3)})
    with pytest.raises(MassInvariantError):
        EdgeMass(3, {(0, 1): 0.5, (1, 2): 0.49})
    EdgeMass(3, {(0, 1): 0.5, (1, 2): 0.5 + 2.0**-42})
    with pytest.raises(MassInvariantError):
        EdgeMass(3, {(0, 1): Fraction(3, 2), (1, 2): Fraction(-1, 2)})


def test_pairs_validated():
    with pytest.raises(InvalidParameter):
        EdgeMass(2, {(0, 0): 1})
    with pytest.raises(InvalidParameter):
        EdgeMass(2, {(0, 2): 1})
    with pytest.raises(InvalidParameter):
        EdgeMass(3, [((0, 1), Fraction(1, 2)), ((1, 0), Fraction(1, 2))])


def test_zero_weights_dropped_and_lookup_symmetric():
    mu = EdgeMass(4, {(1, 0): Fraction(1, 2), (2, 3): Fraction(1, 2), (0, 2): 0})
    assert mu.support == ((0, 1), (2, 3))
    assert mu[(1, 0)] == Fraction(1, 2) and mu[(0, 2)] == 0
    with pytest.raises(AttributeError):
        mu.n = 5


def test_kind_conversion():
    mu = uniform_on_edges(cycle_graph(4))
    assert mu.exact and not mu.to_float().exact
    assert mu.to_float().to_exact() == mu


def test_uniform_masses():
    mu = uniform_on_edges(cycle_graph(5))
    assert set(mu.weights().values()) == {Fraction(1, 5)}
    assert set(stats(mu).weighted_degree) == {Fraction(2, 5)}
    mu = uniform_on_edges(complete_bipartite(3, 3))
    assert len(mu) == 9 and set(stats(mu).weighted_degree) == {Fraction(1, 3)}
    assert set(uniform_on_edges(cycle_graph(6)).weights().values()) == {Fraction(1, 6)}


# -- objective ---------------------------------------------------------------


@pytest.mark.parametrize("m", range(3, 9))
def test_beta_uniform_cycle(m):
    assert beta(uniform_on_edges(cycle_graph(m)), m) == Fraction(1, m**m)


def test_beta_uniform_k5():
    # 12 five-cycles, each of mass 10^-5
    assert beta(uniform_on_edges(complete_graph(5)), 5) == Fraction(12, 10**5)


def test_beta_too_few_vertices():
    mu = uniform_on_edges(complete_graph(4))
    assert beta(mu, 5) == 0
    assert beta(mu.to_float(), 7) == 0.0
    with pytest.raises(InvalidParameter):
        beta(mu, 2)


@given(exact_masses(), st.integers(3, 7))
def test_beta_matches_brute_force(mu, m):
    assert beta(mu, m) == beta_brute(mu.weights(), m)


@given(exact_masses())
def test_float_beta_tracks_exact(mu):
    for m in (3, 4, 5):
        assert math.isclose(float(beta(mu, m)), beta(mu.to_float(), m), rel_tol=1e-12, abs_tol=1e-300)


@given(exact_masses())
def test_handshake(mu):
    assert sum(stats(mu).weighted_degree) == 2
    assert abs(sum(stats(mu.to_float()).weighted_degree) - 2) <= 2.0**-38


@given(exact_masses(), st.integers(3, 6), st.data())
def test_removing_an_edge_never_adds_cycles(mu, m, data):
    if len(mu) < 2:
        return
    drop = data.draw(st.sampled_from(mu.support))
    rest = {e: w for e, w in mu.items() if e != drop}
    total = sum(rest.values())
    nu = EdgeMass(mu.n, {e: w / total for e, w in rest.items()})
    assert set(support_cycles(nu, m)) <= set(support_cycles(mu, m))


def test_subgraph_mass():
    mu = uniform_on_edges(cycle_graph(5))
    assert subgraph_mass(mu, cycle_graph(5)) == Fraction(1, 3125)
    assert subgraph_mass(mu, from_edges(5, [(0, 1)])) == Fraction(1, 5)
    assert subgraph_mass(mu, from_edges(5, [(0, 2)])) == 0
    with pytest.raises(InvalidParameter):
        subgraph_mass(mu, from_edges(5, []))


def test_stats_examples():
    s = stats(uniform_on_edges(cycle_graph(6)))
    assert set(s.weighted_degree) == {Fraction(1, 3)}
    assert s.support_graph == cycle_graph(6) and s.vertex_support_size == 6
    s = stats(uniform_on_edges(complete_bipartite(3, 3)))
    assert s.support_graph == complete_bipartite(3, 3)
    s = stats(EdgeMass(3, {(0, 1): Fraction(1, 2), (1, 2): Fraction(1, 2)}))
    assert s.weighted_degree == (Fraction(1, 2), Fraction(1), Fraction(1, 2))
    mu = EdgeMass(5, {(0, 1): Fraction(1)})
    assert stats(mu).vertex_support == (0, 1)
    assert support_graph(mu).num_edges == 1


# -- edge rescaling ----------------------------------------------------------


def test_rescale_c6():
    mu = uniform_on_edges(cycle_graph(6))
    assert rescale_edge_factors(Fraction(1, 6), 6) == (2, Fraction(2, 3))
    nu = rescale_edge(mu, (0, 1), 6)
    assert sorted(nu.weights().values()) == [Fraction(1, 9)] * 3 + [Fraction(1, 3)] * 2
    assert nu[(0, 1)] == 0
    assert sum(nu.weights().values()) == 1
    assert beta(nu, 6) == 0


def test_rescale_c5():
    mu = uniform_on_edges(cycle_graph(5))
    assert rescale_edge_factors(Fraction(1, 5), 5) == (2, Fraction(1, 2))
    nu = rescale_edge(mu, (2, 3), 5)
    assert sum(nu.weights().values()) == 1
    assert nu[(1, 2)] == nu[(3, 4)] == Fraction(2, 5)
    assert nu[(0, 1)] == nu[(0, 4)] == Fraction(1, 10)


def test_rescale_float_mass():
    nu = rescale_edge(uniform_on_edges(cycle_graph(6)).to_float(), (0, 1), 6)
    assert not nu.exact and abs(sum(nu.weights().values()) - 1) < 1e-15


def test_rescale_preconditions():
    lopsided = EdgeMass(5, {(0, 1): Fraction(2, 5), (1, 2): Fraction(1, 5), (2, 3): Fraction(1, 5),
                            (3, 4): Fraction(1, 10), (0, 4): Fraction(1, 10)})
    with pytest.raises(PreconditionViolation):
        rescale_edge(lopsided, (0, 1), 5)
    # uniform K5 is 2/5-regular, so it qualifies
    assert sum(rescale_edge(uniform_on_edges(complete_graph(5)), (0, 1), 5).weights().values()) == 1
    with pytest.raises(PreconditionViolation):
        rescale_edge(uniform_on_edges(cycle_graph(5)), (0, 2), 5)
    with pytest.raises(InvalidParameter):
        rescale_edge(uniform_on_edges(cycle_graph(7)), (0, 1), 7)


# -- Monte Carlo -------------------------------------------------------------


def test_mc_uniform_c5():
    mu = uniform_on_edges(cycle_graph(5))
    res = monte_carlo_cycle_probability(mu, 5, 10**6, seed=11)
    target = 120 / 3125
    assert abs(res.zscore(target)) <= 3
    assert res.samples == 10**6 and 0 < res.stderr < 1e-3


def test_mc_uniform_c6():
    res = monte_carlo_cycle_probability(uniform_on_edges(cycle_graph(6)), 6, 10**6, seed=12)
    assert abs(res.zscore(720 / 46656)) <= 3


def test_mc_triangle_never_forms_four_cycle():
    res = monte_carlo_cycle_probability(uniform_on_edges(complete_graph(3)), 4, 50_000, seed=1)
    assert res.successes == 0
    res = monte_carlo_cycle_probability(uniform_on_edges(complete_graph(3)), 3, 50_000, seed=1)
    assert abs(res.zscore(6 / 27)) <= 4


def test_mc_reproducible_and_independent_of_workers():
    mu = uniform_on_edges(complete_graph(5))
    a = monte_carlo_cycle_probability(mu, 5, 200_001, seed=99)
    b = monte_carlo_cycle_probability(mu, 5, 200_001, seed=99, workers=4)
    c = monte_carlo_cycle_probability(mu, 5, 200_001, seed=100)
    assert a == b
    assert a.successes != c.successes


def test_mc_prefix_blocks_shared():
    # the first block of a longer run is the same draw as a one-block run
    mu = uniform_on_edges(cycle_graph(5))
    one = monte_carlo_cycle_probability(mu, 5, 1 << 16, seed=4)
    two = monte_carlo_cycle_probability(mu, 5, 1 << 17, seed=4)
    assert one.successes <= two.successes


def test_mc_matches_beta_on_nonuniform_mass():
    mu = EdgeMass(4, {(0, 1): Fraction(1, 3), (1, 2): Fraction(1, 6), (2, 3): Fraction(1, 6),
                      (0, 3): Fraction(1, 6), (0, 2): Fraction(1, 6)})
    target = float(24 * beta(mu, 4))
    res = monte_carlo_cycle_probability(mu, 4, 400_000, seed=8)
    assert abs(res.zscore(target)) <= 4


def test_mc_argument_errors():
    mu = uniform_on_edges(path_graph(3))
    with pytest.raises(InvalidParameter):
        monte_carlo_cycle_probability(mu, 3, 0)
    with pytest.raises(InvalidParameter):
        monte_carlo_cycle_probability(mu, 2, 10)
    assert monte_carlo_cycle_probability(mu, 5, 10).successes == 0
