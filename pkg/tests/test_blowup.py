from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclemass.blowup import (
    BlowupSpec,
    bag_sizes_for,
    build_blowup,
    count_long_cycles,
    leading_term_check,
    spec_leading_term,
    spec_mass,
    uniform_blowup,
)
from cyclemass.errors import InvalidParameter
from cyclemass.graphs import complete_graph, cycle_graph, is_isomorphic
from cyclemass.mass import EdgeMass, uniform_on_edges
from oracles import count_cycles_brute, count_cycles_nx


def test_single_bags_subdivide():
    bg = build_blowup(uniform_blowup(cycle_graph(5), 1))
    assert is_isomorphic(bg.graph, cycle_graph(10))


def test_size_and_edge_count():
    bg = build_blowup(uniform_blowup(cycle_graph(5), 4))
    assert bg.graph.n == 25 and bg.graph.num_edges == 40


def test_layout_and_labels():
    bg = build_blowup(BlowupSpec(cycle_graph(4), {(0, 1): 2, (2, 3): 1}))
    assert bg.labels[:4] == tuple(("base", v) for v in range(4))
    assert bg.labels[4:] == (("bag", (0, 1), 0), ("bag", (0, 1), 1), ("bag", (2, 3), 0))
    for x in range(4, 7):
        assert bg.graph.degree(x) == 2
        (u, v) = bg.bag_of(x)
        assert bg.graph.has_edge(x, u) and bg.graph.has_edge(x, v)
    for u in range(4):
        for v in range(4):
            assert not bg.graph.has_edge(u, v)


def test_empty_bag_breaks_the_cycle():
    spec = BlowupSpec(cycle_graph(6), {e: 2 for e in cycle_graph(6).edges[1:]})
    assert spec.sizes[(0, 1)] == 0
    assert count_long_cycles(build_blowup(spec), 6) == 0


def test_vertex_cap():
    with pytest.raises(InvalidParameter):
        uniform_blowup(cycle_graph(5), 6)
    with pytest.raises(InvalidParameter):
        BlowupSpec(cycle_graph(5), {(0, 2): 1})
    with pytest.raises(InvalidParameter):
        BlowupSpec(cycle_graph(5), {(0, 1): -1})


@pytest.mark.parametrize("t,expected", [(1, 1), (2, 32), (3, 243)])
def test_c5_counts(t, expected):
    bg = build_blowup(uniform_blowup(cycle_graph(5), t))
    assert count_long_cycles(bg, 5) == expected


def test_c5_count_against_brute_force():
    bg = build_blowup(uniform_blowup(cycle_graph(5), 2))
    assert count_cycles_nx(bg.graph.n, bg.graph.edges, 10) == 32


def test_c6_count():
    assert count_long_cycles(build_blowup(uniform_blowup(cycle_graph(6), 2)), 6) == 64


def test_subdivided_k4():
    # every six-cycle of the subdivision comes from a triangle of K4
    bg = build_blowup(uniform_blowup(complete_graph(4), 1))
    assert count_cycles_brute(bg.graph.n, bg.graph.edges, 6) == 4
    assert count_long_cycles(bg, 3) == 4


def test_leading_term_c5():
    lt = leading_term_check(uniform_on_edges(cycle_graph(5)), 5, 20)
    assert lt.realized_n == 20 and lt.count == 1024
    assert lt.projection == 1024 and lt.ratio == 1


def test_leading_term_c6():
    lt = leading_term_check(uniform_on_edges(cycle_graph(6)), 6, 12)
    assert (lt.count, lt.projection, lt.ratio) == (64, 64, 1)


def test_leading_term_triangle():
    lt = leading_term_check(uniform_on_edges(complete_graph(3)), 5, 9)
    assert lt.count == 0 and lt.projection == 0 and lt.ratio is None


def test_leading_term_oversized():
    with pytest.raises(InvalidParameter):
        leading_term_check(uniform_on_edges(cycle_graph(5)), 5, 30)


def test_bag_rounding_half_to_even():
    mu = EdgeMass(4, {(0, 1): Fraction(1, 4), (1, 2): Fraction(1, 4), (2, 3): Fraction(1, 2)})
    assert bag_sizes_for(mu, 10) == {(0, 1): 2, (1, 2): 2, (2, 3): 5}
    assert bag_sizes_for(mu, 6) == {(0, 1): 2, (1, 2): 2, (2, 3): 3}


def test_spec_leading_term():
    spec = uniform_blowup(cycle_graph(5), 2)
    lt = spec_leading_term(spec, 5)
    assert lt.count == 32 and lt.ratio == 1
    assert spec_mass(spec) == uniform_on_edges(cycle_graph(5))
    assert spec_mass(BlowupSpec(cycle_graph(5), {})) is None


bag_specs = st.lists(st.integers(0, 3), min_size=5, max_size=5).map(
    lambda ts: BlowupSpec(cycle_graph(5), dict(zip(cycle_graph(5).edges, ts)))
)


@given(bag_specs)
def test_planar_edge_bound(spec):
    G = build_blowup(spec).graph
    if G.n >= 3:
        assert G.num_edges <= 3 * G.n - 6


@settings(max_examples=30)
@given(bag_specs, st.integers(0, 4))
def test_count_is_product_and_monotone(spec, i):
    sizes = spec.sizes
    count = count_long_cycles(build_blowup(spec), 5)
    prod = 1
    for t in sizes.values():
        prod *= t
    assert count == prod
    e = cycle_graph(5).edges[i]
    bigger = BlowupSpec(cycle_graph(5), {**sizes, e: sizes[e] + 1})
    assert count_long_cycles(build_blowup(bigger), 5) >= count
