"""Text formats: mass files, blow-up spec files, and report records.

Mass file::

    # comment lines and blank lines are ignored
    5 5            <- vertex count, number of edge lines
    0 1 1/5        <- u v weight (decimal or num/den)
    ...

Blow-up spec file: a graph6 line for the base graph, then ``u v size`` lines.

Reports are written either as JSON lines (one object per record) or as
whitespace-separated ``key=value`` lines.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .blowup import BlowupSpec
from .errors import MassInvariantError, ParseError
from .graphs import parse_graph6, to_graph6
from .mass import FLOAT_SUM_TOL, EdgeMass

__all__ = [
    "parse_mass",
    "read_mass_file",
    "format_mass",
    "parse_blowup_spec",
    "read_blowup_spec",
    "format_blowup_spec",
    "scalar",
    "format_record",
    "dump_records",
]


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _weight(tok, lineno) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad weight {tok!r}", f"line {lineno}") from None


def _int(tok, lineno, what) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"bad {what} {tok!r}", f"line {lineno}") from None


def parse_mass(text: str, exact: bool | None = None) -> EdgeMass:
    """Parse mass-file text.

    Rational weights summing to exactly 1 give an exact mass; a sum within
    2^-40 of 1 gives a float mass, unless ``exact=True``.  ``exact=False``
    always gives a float mass.  Larger deviations raise
    :class:`MassInvariantError`.
    """
    rows = list(_lines(text))
    if not rows:
        raise ParseError("empty mass file", "line 1")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be 'n m'", f"line {lineno}")
    n = _int(parts[0], lineno, "vertex count")
    count = _int(parts[1], lineno, "edge count")
    if len(rows) - 1 != count:
        raise ParseError(f"header promises {count} edges, found {len(rows) - 1}", f"line {lineno}")
    weights = {}
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError("edge line must be 'u v p'", f"line {lineno}")
        u = _int(parts[0], lineno, "vertex")
        v = _int(parts[1], lineno, "vertex")
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"bad pair ({u}, {v}) for n={n}", f"line {lineno}")
        key = (min(u, v), max(u, v))
        if key in weights:
            raise ParseError(f"pair {key} repeated", f"line {lineno}")
        w = _weight(parts[2], lineno)
        if w < 0:
            raise MassInvariantError(f"negative weight on line {lineno}")
        weights[key] = w
    total = sum(weights.values(), Fraction(0))
    if total == 1 and exact is not False:
        return EdgeMass(n, weights, exact=True)
    if exact:
        raise MassInvariantError(f"weights sum to {total}, not exactly 1")
    if abs(total - 1) > FLOAT_SUM_TOL:
        raise MassInvariantError(f"weights sum to {float(total)!r}, not 1")
    return EdgeMass(n, {e: float(w) for e, w in weights.items()}, exact=False)


def read_mass_file(path, exact: bool | None = None) -> EdgeMass:
    with open(path, encoding="utf-8") as fh:
        return parse_mass(fh.read(), exact=exact)


def format_mass(mu: EdgeMass) -> str:
    lines = [f"{mu.n} {len(mu)}"]
    for (u, v), w in mu.items():
        lines.append(f"{u} {v} {w if mu.exact else repr(w)}")
    return "\n".join(lines) + "\n"


def parse_blowup_spec(text: str) -> BlowupSpec:
    rows = list(_lines(text))
    if not rows:
        raise ParseError("empty blow-up spec", "line 1")
    lineno, g6 = rows[0]
    try:
        base = parse_graph6(g6)
    except ParseError as exc:
        raise ParseError(f"base graph: {exc}", f"line {lineno}") from exc
    sizes = {}
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError("bag line must be 'u v size'", f"line {lineno}")
        u, v, t = (_int(p, lineno, "field") for p in parts)
        if not base.n > max(u, v) >= 0 or not base.has_edge(u, v):
            raise ParseError(f"({u}, {v}) is not a base edge", f"line {lineno}")
        key = (min(u, v), max(u, v))
        if key in sizes:
            raise ParseError(f"edge {key} repeated", f"line {lineno}")
        if t < 0:
            raise ParseError("bag size must be nonnegative", f"line {lineno}")
        sizes[key] = t
    return BlowupSpec(base, sizes)


def read_blowup_spec(path) -> BlowupSpec:
    with open(path, encoding="ascii") as fh:
        return parse_blowup_spec(fh.read())


def format_blowup_spec(spec: BlowupSpec) -> str:
    lines = [to_graph6(spec.base)]
    lines += [f"{u} {v} {t}" for (u, v), t in spec.bag_sizes]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# records


def scalar(x):
    """JSON-friendly scalar: rationals become ``"num/den"`` strings."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, bytes):
        return x.decode("ascii")
    if isinstance(x, dict):
        return {str(k): scalar(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [scalar(v) for v in x]
    return x


def _text(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    if v is None:
        return "-"
    if isinstance(v, dict):
        return ",".join(f"{k}:{_text(x)}" for k, x in v.items())
    return str(v)


def format_record(rec: dict) -> str:
    return " ".join(f"{k}={_text(scalar(v))}" for k, v in rec.items())


def dump_records(records, fmt: str = "text") -> str:
    if fmt == "json":
        return "".join(json.dumps(scalar(r)) + "\n" for r in records)
    if fmt == "text":
        return "".join(format_record(r) + "\n" for r in records)
    raise ValueError(f"unknown format {fmt!r}")
