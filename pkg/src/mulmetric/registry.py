"""Built-in problems, named maps, and the problem-file format.

A ProblemDefinition pins everything a solver run needs (space, map, kind,
constant, start, tolerance, seed) so that runs are reproducible and can be
round-tripped through the plain-text problem format:

    key = value        # one per line, '#' starts a comment
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Optional

from . import spaces
from .errors import InputError
from .expressions import compile_expr
from .metric_core import PosVec, SegmentPoint
from .spaces import SelfMap, SpaceInstance

SPACE_IDS = ("pos-reals", "pos-interval", "d-star", "d-a", "real-line-exp",
             "segment", "func-sup", "product-pos")


@dataclass(frozen=True)
class ProblemDefinition:
    """A fully pinned solver run."""

    space_id: str
    map_id: Optional[str] = None
    expr: Optional[str] = None
    dim: int = 1
    base: float = math.e
    lo: Optional[float] = None
    hi: Optional[float] = None
    kind: str = "banach"
    lam: float = 0.5
    x0: tuple = (1.0,)
    tol_log: float = 1e-12
    max_iter: int = 10**6
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "x0", tuple(float(c) for c in self.x0))
        if self.space_id not in SPACE_IDS:
            raise InputError(f"unknown space id {self.space_id!r}")
        if (self.map_id is None) == (self.expr is None):
            raise InputError("exactly one of map_id and expr must be set")


# ---------------------------------------------------------------------------
# named maps

def _paper_scalar_fn(x: float) -> float:
    return math.exp(x - 1.0 - x**3 / 10.0)


def _quarter_fn(x: float) -> float:
    return x / 4.0


MAP_FNS = {
    "paper-scalar": _paper_scalar_fn,
    "sqrt-toy": math.sqrt,
    "quarter": _quarter_fn,
    "segment-half-power": None,  # built against the segment space below
}


def build_space(pd: ProblemDefinition) -> SpaceInstance:
    if pd.space_id == "pos-reals":
        return spaces.positive_reals()
    if pd.space_id == "pos-interval":
        if pd.lo is None or pd.hi is None:
            raise InputError("pos-interval needs lo and hi")
        return spaces.positive_interval(pd.lo, pd.hi)
    if pd.space_id == "d-star":
        return spaces.positive_vectors(pd.dim)
    if pd.space_id == "d-a":
        return spaces.exp_metric(pd.dim, pd.base)
    if pd.space_id == "real-line-exp":
        return spaces.real_line_exp()
    if pd.space_id == "segment":
        return spaces.segment_space()
    if pd.space_id == "func-sup":
        lo = pd.lo if pd.lo is not None else 0.0
        hi = pd.hi if pd.hi is not None else 1.0
        return spaces.function_space(lo, hi)
    if pd.space_id == "product-pos":
        inner = spaces.positive_reals()
        return spaces.product_space(inner, inner)
    raise InputError(f"unknown space id {pd.space_id!r}")


def build_selfmap(pd: ProblemDefinition, space: SpaceInstance | None = None) -> SelfMap:
    space = space or build_space(pd)
    if pd.map_id == "segment-half-power":
        return spaces.segment_half_power_map(space)
    if pd.map_id is not None:
        fn = MAP_FNS.get(pd.map_id)
        if fn is None:
            raise InputError(f"unknown map id {pd.map_id!r}")
        return SelfMap(pd.map_id, fn, space)
    return SelfMap(f"expr({pd.expr})", compile_expr(pd.expr, ("x",)), space)


def decode_point(pd: ProblemDefinition, coords: tuple):
    """Turn the flat x0 coordinate tuple into the space's point type."""
    if pd.space_id == "segment":
        if len(coords) != 2:
            raise InputError("segment points need two coordinates")
        return SegmentPoint(coords[0], coords[1])
    if pd.space_id == "d-star" and pd.dim > 1:
        return PosVec(coords)
    if len(coords) != 1:
        raise InputError(f"space {pd.space_id!r} expects a scalar start point")
    return coords[0]


def encode_point(point) -> list[float]:
    """Flatten a point into a list of reals for the trace schema."""
    if isinstance(point, SegmentPoint):
        return [point.u, point.v]
    if hasattr(point, "coords"):
        return [float(c) for c in point.coords]
    return [float(point)]


# ---------------------------------------------------------------------------
# problem files

def serialize_problem(pd: ProblemDefinition) -> str:
    lines = []
    for f in fields(pd):
        value = getattr(pd, f.name)
        if value is None:
            continue
        if f.name == "x0":
            value = ",".join(repr(c) for c in value)
        lines.append(f"{f.name} = {value}")
    return "\n".join(lines) + "\n"


def parse_problem(text: str) -> ProblemDefinition:
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        raw[key] = value
    known = {f.name: f for f in fields(ProblemDefinition)}
    kwargs = {}
    for key, value in raw.items():
        if key not in known:
            raise InputError(f"unknown problem key {key!r}")
        if key == "x0":
            kwargs[key] = tuple(float(c) for c in value.split(","))
        elif key in ("dim", "max_iter", "seed"):
            kwargs[key] = int(value)
        elif key in ("base", "lo", "hi", "lam", "tol_log"):
            kwargs[key] = float(value)
        else:
            kwargs[key] = value
    try:
        return ProblemDefinition(**kwargs)
    except TypeError as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# built-in problems

@dataclass(frozen=True)
class RegistryEntry:
    problem: ProblemDefinition
    expected: str
    source: str


REGISTRY = {
    "paper-scalar": RegistryEntry(
        ProblemDefinition(space_id="pos-interval", map_id="paper-scalar",
                          lo=0.1, hi=1.0, kind="banach", lam=0.997,
                          x0=(0.5,), tol_log=1e-10, max_iter=10**5),
        expected="0.7411317711",
        source="scalar interval example: x -> exp(x - 1 - x^3/10) on [0.1, 1]"),
    "paper-segment": RegistryEntry(
        ProblemDefinition(space_id="segment", map_id="segment-half-power",
                          kind="banach", lam=0.5, x0=(2.0, 1.0),
                          tol_log=1e-13, max_iter=10**4),
        expected="(1, 1)",
        source="two-segment example: swap segments and take square roots"),
    "sqrt-toy": RegistryEntry(
        ProblemDefinition(space_id="pos-reals", map_id="sqrt-toy",
                          kind="banach", lam=0.5, x0=(16.0,),
                          tol_log=1e-12, max_iter=10**4),
        expected="1",
        source="square-root toy contraction on the positive reals"),
    "quarter-kannan": RegistryEntry(
        ProblemDefinition(space_id="real-line-exp", map_id="quarter",
                          kind="kannan", lam=1.0 / 3.0, x0=(8.0,),
                          tol_log=1e-10, max_iter=10**4),
        expected="0",
        source="x -> x/4 under the exponential line metric, Kannan-type"),
    "quarter-chatterjea": RegistryEntry(
        ProblemDefinition(space_id="real-line-exp", map_id="quarter",
                          kind="chatterjea", lam=0.2, x0=(8.0,),
                          tol_log=1e-10, max_iter=10**4),
        expected="0",
        source="x -> x/4 under the exponential line metric, Chatterjea-type"),
}
