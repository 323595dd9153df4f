"""Closed-form thresholds and inequalities for optimal cycle masses.

Everything that is asserted is decided in exact rational arithmetic.  The
threshold searches bisect over dyadic rationals and return both endpoints of
the final bracket, each re-certified exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import CycleMassError, InvalidParameter, ProofStepFailure
from .graphs import (
    cartesian_product,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    enumerate_cycles,
    enumerate_graphs,
    is_isomorphic,
)
from .mass import EdgeMass, beta, rescale_edge, uniform_on_edges

__all__ = [
    "ThresholdNotFound",
    "Threshold",
    "Check",
    "BoundReport",
    "vertbound_holds",
    "vert_threshold",
    "f",
    "f_sign_of_derivative",
    "edge_threshold",
    "edge_inequality_lhs",
    "check_edge_inequality",
    "support_size_caps",
    "exp_probe",
    "verify_c6_case_analysis",
    "verify_suite",
]

ASYMPTOTIC_CONST = Fraction(1593, 1000)
ASYMPTOTIC_CAP = Fraction(1256, 1000)


class ThresholdNotFound(CycleMassError):
    pass


def _q(z) -> Fraction:
    return z if isinstance(z, Fraction) else Fraction(z)


@dataclass(frozen=True)
class Threshold:
    """Bracket ``lower < z* <= upper`` with the predicate true at ``lower``, false at ``upper``."""

    m: int
    lower: Fraction
    upper: Fraction
    interval_on_grid: bool = True
    grid: int = 0

    @property
    def value(self) -> float:
        return float((self.lower + self.upper) / 2)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


@dataclass
class BoundReport:
    m: int
    checks: list = field(default_factory=list)
    partial: bool = False
    vertex_threshold: Threshold | None = None
    edge_threshold: Threshold | None = None
    support_cap: int | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, detail="", witness=None):
        self.checks.append(Check(name, bool(passed), detail, witness))
        return bool(passed)

    def record(self) -> dict:
        return {
            "m": self.m,
            "partial": self.partial,
            "passed": self.passed,
            "vertex_threshold": _threshold_record(self.vertex_threshold),
            "edge_threshold": _threshold_record(self.edge_threshold),
            "support_cap": self.support_cap,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
            ],
        }


def _threshold_record(t):
    if t is None:
        return None
    return {"lower": str(t.lower), "upper": str(t.upper), "value": t.value}


# --------------------------------------------------------------------------
# vertex-mass threshold


def vertbound_holds(z, m: int) -> bool:
    """Exact test of ``1 - (m/2) z > (1 - z)^m``."""
    z = _q(z)
    if not 0 < z < 1:
        raise InvalidParameter("z must lie in (0, 1)")
    return 1 - Fraction(m, 2) * z > (1 - z) ** m


def _bisect(pred: Callable[[Fraction], bool], lo: Fraction, hi: Fraction, precision) -> tuple:
    # invariant: pred(lo) and not pred(hi)
    precision = _q(precision)
    while hi - lo > precision:
        mid = (lo + hi) / 2
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


def vert_threshold(m: int, precision=Fraction(1, 2**40), grid: int | None = None) -> Threshold:
    """Supremum of the z in (0, 1) where the vertex-mass inequality holds.

    The predicate is scanned on ``k/grid``; the last true grid point and its
    successor are then bisected.  ``interval_on_grid`` records whether the
    true grid points form a prefix of the grid (no interval structure is
    assumed).
    """
    if m < 3:
        raise InvalidParameter("m must be at least 3")
    N = grid or max(1000, 100 * m)
    hits = [vertbound_holds(Fraction(k, N), m) for k in range(1, N)]
    if not any(hits):
        raise ThresholdNotFound(f"vertex inequality fails on the whole grid for m={m}")
    last = max(k for k, h in enumerate(hits, 1) if h)
    prefix = all(hits[:last])
    lo = Fraction(last, N)
    hi = Fraction(last + 1, N)
    if hi >= 1:
        raise ThresholdNotFound("vertex inequality holds up to z=1")
    lo, hi = _bisect(lambda z: vertbound_holds(z, m), lo, hi, precision)
    return Threshold(m, lo, hi, interval_on_grid=prefix, grid=N)


def support_size_caps(m: int, threshold: Threshold | None = None) -> tuple[int, int]:
    """``(cap_exact, cap_asymptotic)`` bounds on the number of support vertices.

    Weighted degrees exceed the certified lower threshold ``z``, and they sum
    to 2, so the vertex support is strictly below ``2/z``.  The asymptotic
    cap is the largest integer strictly below ``1.256 m``.
    """
    t = threshold or vert_threshold(m)
    cap_exact = math.ceil(2 / t.lower) - 1
    cap_asym = math.ceil(ASYMPTOTIC_CAP * m) - 1
    return cap_exact, cap_asym


def exp_probe(t: float = 1.593, step: float = 1e-3) -> dict:
    """Numeric probe of ``1 - t/2 > exp(-t)`` at ``t`` and ``t + step``.

    Via ``(1 - z)^m <= exp(-m z)`` this makes ``z = t/m`` valid for every m.
    """
    g = lambda s: 1 - s / 2 - math.exp(-s)  # noqa: E731
    return {"t": t, "holds": g(t) > 0, "next": t + step, "next_holds": g(t + step) > 0}


# --------------------------------------------------------------------------
# edge-mass function


def _f_raw(z: Fraction, m: int) -> Fraction:
    return (Fraction(2) / (2 - z)) ** 4 * (Fraction(m - 4) / (m - 4 + z)) ** (m - 4) * (1 - z)


def f(z, m: int) -> Fraction:
    """``(2/(2-z))^4 ((m-4)/(m-4+z))^(m-4) (1-z)`` evaluated exactly on [0, 1)."""
    z = _q(z)
    if m < 5:
        raise InvalidParameter("f is defined for m >= 5")
    if not 0 <= z < 1:
        raise InvalidParameter("z must lie in [0, 1)")
    return _f_raw(z, m)


def f_sign_of_derivative(z, m: int) -> int:
    """Sign of f'(z), which equals the sign of ``(1 - m) z^2 + 2 z`` on [0, 1)."""
    z = _q(z)
    if not 0 <= z < 1:
        raise InvalidParameter("z must lie in [0, 1)")
    q = (1 - m) * z * z + 2 * z
    return (q > 0) - (q < 0)


def edge_threshold(m: int, precision=Fraction(1, 2**40)) -> Threshold:
    """Root z* of f(z) = 1 on [2/(m-1), 1), bracketed exactly."""
    if m < 5:
        raise InvalidParameter("edge threshold is defined for m >= 5")
    lo = Fraction(2, m - 1)
    hi = Fraction(1)
    if not (_f_raw(lo, m) > 1 and _f_raw(hi, m) < 1):
        raise CycleMassError(f"f does not bracket 1 on [2/(m-1), 1) for m={m}")
    lo, hi = _bisect(lambda z: _f_raw(z, m) > 1, lo, hi, precision)
    return Threshold(m, lo, hi)


def edge_inequality_lhs(mu_e, m: int):
    """Left side of the edge inequality at ``z = m * mu(e)``; None if 2 - z <= 0."""
    z = m * mu_e
    if 2 - z <= 0 or m - 4 + z <= 0:
        return None
    if isinstance(z, Fraction):
        return _f_raw(z, m)
    return (2 / (2 - z)) ** 4 * ((m - 4) / (m - 4 + z)) ** (m - 4) * (1 - z)


@dataclass(frozen=True)
class EdgeCheck:
    edge: tuple
    mass: object
    lhs: object
    passed: bool


def check_edge_inequality(mu: EdgeMass, m: int, slack: float = 1e-12) -> list[EdgeCheck]:
    """Evaluate the edge inequality (LHS <= 1) on every support edge.

    Diagnostic only: it does not certify that ``mu`` is optimal.  Exact
    masses compare against 1 exactly, float masses against ``1 + slack``.
    """
    bound = 1 if mu.exact else 1 + slack
    out = []
    for e, x in mu.items():
        lhs = edge_inequality_lhs(x, m)
        out.append(EdgeCheck(e, x, lhs, lhs is not None and lhs <= bound))
    return out


# --------------------------------------------------------------------------
# proof checks


def _degree_cap(vertex_mass: Fraction, edge_floor: Fraction) -> int:
    """Largest integer d with ``edge_floor * d < vertex_mass``."""
    d = math.ceil(vertex_mass / edge_floor) - 1
    assert edge_floor * d < vertex_mass <= edge_floor * (d + 1)
    return d


def verify_c6_case_analysis(strict: bool = True) -> BoundReport:
    """Check the four computational steps excluding 3-regular supports for m=6."""
    rep = BoundReport(6)
    cubic = enumerate_graphs(6, min_degree=3, max_degree=3, connected=True)
    k33 = complete_bipartite(3, 3)
    prism = cartesian_product(complete_graph(3), complete_graph(2))
    matched = (
        len(cubic) == 2
        and any(is_isomorphic(G, k33) for G in cubic)
        and any(is_isomorphic(G, prism) for G in cubic)
    )
    rep.add("cubic-enumeration", matched, f"{len(cubic)} connected 3-regular graphs on 6 vertices",
            witness=cubic)
    counts = (len(enumerate_cycles(k33, 6)), len(enumerate_cycles(prism, 6)))
    rep.add("cubic-six-cycle-counts", counts == (6, 3) and max(counts) <= 6,
            f"K33 has {counts[0]}, prism has {counts[1]} six-cycles (both <= 6)", witness=counts)
    edge_floor = Fraction(1, 11)
    cycle_sum = 1 - 3 * edge_floor
    rep.add("cycle-mass-sum", 9 * edge_floor == Fraction(9, 11) and cycle_sum == Fraction(8, 11),
            "3 off-cycle edges each > 1/11, so a six-cycle carries < 1 - 3/11 = 8/11",
            witness=cycle_sum)
    amgm = 6 * cycle_sum**6
    rep.add("am-gm-cubic", amgm <= Fraction(89, 100) and amgm < 1,
            f"6*(8/11)^6 = {amgm} ~ {float(amgm):.6f} <= 0.89 < 1", witness=amgm)
    if strict and not rep.passed:
        raise ProofStepFailure(rep.failures[0].name, rep.failures[0].detail)
    return rep


def _rightstruct(rep: BoundReport, m: int) -> None:
    z = Fraction(2, m + 1)
    ok = vertbound_holds(z, m)
    rep.add("vertex-threshold", ok,
            f"1 - (m/2)z = {1 - Fraction(m, 2) * z} > (1-z)^m = {(1 - z) ** m} at z = {z}")
    rep.add("support-size", ok and 2 / z == m + 1,
            f"2 = sum of weighted degrees > {z} * |supp|, so |supp| < {m + 1}, hence = {m}")


def _edge_floor(rep: BoundReport, m: int, z: Fraction) -> Fraction:
    val = f(z, m)
    rep.add("edge-threshold", val > 1, f"f({z}; {m}) = {val} > 1, so every mu(e) > {z / m}",
            witness=val)
    rep.add("f-endpoints", f(0, m) == 1 and _f_raw(Fraction(1), m) == 0, "f(0) = 1 and f(1) = 0")
    peak = Fraction(2, m - 1)
    signs = (f_sign_of_derivative(peak / 2, m), f_sign_of_derivative(peak, m),
             f_sign_of_derivative((1 + peak) / 2, m))
    rep.add("f-unimodal", signs == (1, 0, -1), f"sign f' around 2/(m-1): {signs}")
    t = edge_threshold(m)
    rep.edge_threshold = t
    rep.add("edge-root-bracket", t.lower >= z and _f_raw(t.upper, m) < 1,
            f"z* in ({float(t.lower):.9f}, {float(t.upper):.9f}], above {z}")
    return z / m


def _amgm_cycle(rep: BoundReport, m: int) -> None:
    Cm = cycle_graph(m)
    two_reg = enumerate_graphs(m, min_degree=2, max_degree=2, connected=True)
    rep.add("two-regular-support", len(two_reg) == 1 and is_isomorphic(two_reg[0], Cm),
            f"the only connected 2-regular graph on {m} vertices is C{m}")
    b = beta(uniform_on_edges(Cm), m)
    rep.add("am-gm-cycle", b == Fraction(1, m**m),
            f"beta(uniform C{m}) = {b} = (1/{m} * 1)^{m}", witness=b)


def _edge_rescaling(rep: BoundReport, m: int) -> None:
    mu = uniform_on_edges(cycle_graph(m))
    nu = rescale_edge(mu, (0, 1), m)
    total = sum(nu.weights().values(), Fraction(0))
    rep.add("edge-rescaling-sum", total == 1, f"rescaled mass on C{m} sums to {total}")
    K = uniform_on_edges(complete_graph(m))
    sep = all(c.passed for c in check_edge_inequality(mu, m)) and not any(
        c.passed for c in check_edge_inequality(K, m)
    )
    rep.add("edge-inequality-separates", sep,
            f"holds on uniform C{m}, fails on uniform K{m}")


def verify_suite(m: int) -> BoundReport:
    """Run every applicable check for ``m``; full suites exist for m in {5, 6}."""
    if m < 3:
        raise InvalidParameter("m must be at least 3")
    rep = BoundReport(m)
    t = vert_threshold(m)
    rep.vertex_threshold = t
    cap, asym = support_size_caps(m, t)
    rep.support_cap = cap
    rep.add("vertex-threshold-bracket", vertbound_holds(t.lower, m) and not vertbound_holds(t.upper, m),
            f"z_v in ({float(t.lower):.9f}, {float(t.upper):.9f}]; support cap {cap}")
    probe = exp_probe()
    rep.add("asymptotic-vertex-bound",
            probe["holds"] and vertbound_holds(ASYMPTOTIC_CONST / m, m) and cap <= asym,
            f"1 - t/2 > e^-t at t = 1.593, so weighted degrees > 1.593/{m}; cap {cap} <= {asym}")
    if m not in (5, 6):
        rep.partial = True
        return rep
    _rightstruct(rep, m)
    if m == 5:
        floor = _edge_floor(rep, 5, Fraction(2, 3))
        d = _degree_cap(Fraction(2, 5), floor)
        rep.add("degree-bound", d == 2, f"2/5 > (2/15) deg forces deg <= {d}")
    else:
        floor = _edge_floor(rep, 6, Fraction(6, 11))
        d = _degree_cap(Fraction(1, 3), floor)
        rep.add("degree-bound", d == 3 and Fraction(11, 3) < 4,
                f"1/3 > (1/11) deg forces deg < 11/3, so deg <= {d}")
        spill = (Fraction(1, 3) - Fraction(1, 6)) / 2
        rep.add("mixed-degree", spill == Fraction(1, 12) and spill < floor,
                "a degree-2/degree-3 edge leaves another edge with mass <= 1/12 < 1/11")
        c6 = verify_c6_case_analysis(strict=False)
        rep.checks.extend(c6.checks)
    _amgm_cycle(rep, m)
    _edge_rescaling(rep, m)
    return rep
