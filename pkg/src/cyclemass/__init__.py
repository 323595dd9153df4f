"""Cycle-formation objective on edge probability masses.

For a probability mass ``mu`` on the pairs of a finite vertex set, the
objective ``beta(mu; m)`` sums, over the m-cycles of the support graph, the
product of the edge masses; ``m! * beta`` is the probability that m
independent edge draws form an m-cycle.
"""

__version__ = "0.1.0"

from .graphs import (  # noqa: E402
    SmallGraph,
    canonical_form,
    cartesian_product,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    enumerate_cycles,
    enumerate_graphs,
    parse_graph6,
    to_graph6,
)
from .mass import EdgeMass, beta, monte_carlo_cycle_probability, stats, uniform_on_edges  # noqa: E402
from .kernels import BACKEND  # noqa: E402

__all__ = [
    "BACKEND",
    "EdgeMass",
    "SmallGraph",
    "beta",
    "canonical_form",
    "cartesian_product",
    "complete_bipartite",
    "complete_graph",
    "cycle_graph",
    "enumerate_cycles",
    "enumerate_graphs",
    "monte_carlo_cycle_probability",
    "parse_graph6",
    "stats",
    "to_graph6",
    "uniform_on_edges",
]
