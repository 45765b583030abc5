"""Multiplicative distances computed in log domain.

A multiplicative distance is a value d >= 1 with d = 1 only for equal
points.  Every operation here works with rho = ln d instead of d itself:
near d = 1, where all the convergence action happens, the log form keeps
full floating-point resolution while the plain value would collapse to
1.0 + eps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, ShapeError

#: Two points compare equal when their distance has log_value <= this.
POINT_EQ_TOL_LOG = 1e-12


@dataclass(frozen=True, order=True)
class MulDistance:
    """A multiplicative distance stored as rho = ln d >= 0."""

    log_value: float

    def __post_init__(self):
        if not (self.log_value >= 0.0):
            raise DomainError(f"log_value must be >= 0, got {self.log_value}")

    @classmethod
    def from_value(cls, d: float) -> "MulDistance":
        """Build from a plain distance value d >= 1."""
        if not (d >= 1.0):
            raise DomainError(f"multiplicative distance must be >= 1, got {d}")
        return cls(math.log(d))

    @property
    def value(self) -> float:
        """The plain distance d = e^rho (may overflow for huge rho)."""
        return math.exp(self.log_value)

    def is_identity(self, tol_log: float = POINT_EQ_TOL_LOG) -> bool:
        return self.log_value <= tol_log

    def __mul__(self, other: "MulDistance") -> "MulDistance":
        # multiplicative product = additive in log domain
        return MulDistance(self.log_value + other.log_value)


# ---------------------------------------------------------------------------
# point containers

def _check_coords(coords, positive: bool):
    if len(coords) < 1:
        raise ShapeError("coordinate vector must have length >= 1")
    if positive and any(not (c > 0) for c in coords):
        raise DomainError(f"coordinates must be strictly positive: {coords}")


@dataclass(frozen=True)
class PosVec:
    """A point of R_+^n (all coordinates strictly positive)."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))
        _check_coords(self.coords, positive=True)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True)
class RealVec:
    """A point of R^n."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))
        _check_coords(self.coords, positive=False)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True)
class ComplexVec:
    """A point of C^n."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(complex(c) for c in self.coords))
        _check_coords(self.coords, positive=False)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True)
class SampledPosFunction:
    """A positive function on [a, b] represented by samples on a grid.

    The grid must be strictly increasing; two functions are comparable only
    when sampled on the identical grid.
    """

    grid: tuple
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(float(g) for g in self.grid))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.grid) != len(self.values):
            raise ShapeError("grid and values must have equal length")
        if len(self.grid) < 2:
            raise ShapeError("grid must contain at least two abscissae")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise DomainError("grid must be strictly increasing")
        if any(not (v > 0) for v in self.values):
            raise DomainError("function values must be strictly positive")
        # cached log values make the sup metric one vectorized pass
        object.__setattr__(self, "_log_values", np.log(np.asarray(self.values)))

    @classmethod
    def from_callable(cls, fn, a: float, b: float, n: int = 1024) -> "SampledPosFunction":
        grid = [a + (b - a) * i / (n - 1) for i in range(n)]
        return cls(tuple(grid), tuple(fn(x) for x in grid))


@dataclass(frozen=True)
class SegmentPoint:
    """A point on one of the two unit-anchored segments

        {(u, 1) : 1 <= u <= 2}  union  {(1, v) : 1 <= v <= 2}.
    """

    u: float
    v: float

    def __post_init__(self):
        object.__setattr__(self, "u", float(self.u))
        object.__setattr__(self, "v", float(self.v))
        if not (1.0 <= self.u <= 2.0 and 1.0 <= self.v <= 2.0):
            raise DomainError(f"segment coordinates must lie in [1, 2]: {self}")
        if self.u != 1.0 and self.v != 1.0:
            raise DomainError(f"one coordinate must equal 1: {self}")


def _coords(x) -> Sequence:
    """Accept a typed vector or any bare sequence of coordinates."""
    if isinstance(x, (PosVec, RealVec, ComplexVec)):
        return x.coords
    if isinstance(x, (int, float, complex)):
        return (x,)
    return tuple(x)


# ---------------------------------------------------------------------------
# concrete metrics

def mabs(a: float) -> MulDistance:
    """Multiplicative absolute value: a if a >= 1 else 1/a, as a MulDistance."""
    if not (a > 0):
        raise DomainError(f"mabs requires a > 0, got {a}")
    return MulDistance(abs(math.log(a)))


def dist_pos_vec(x, y) -> MulDistance:
    """Product-of-ratios metric on R_+^n: exp of the L1 distance in log coords."""
    xc, yc = _coords(x), _coords(y)
    if len(xc) != len(yc):
        raise ShapeError(f"length mismatch: {len(xc)} vs {len(yc)}")
    if any(not (c > 0) for c in xc) or any(not (c > 0) for c in yc):
        raise DomainError("dist_pos_vec requires strictly positive coordinates")
    return MulDistance(sum(abs(math.log(a) - math.log(b)) for a, b in zip(xc, yc)))


def dist_exp(x, y, base: float) -> MulDistance:
    """Exponential metric base^(sum |x_i - y_i|) on R^n or C^n (moduli)."""
    if not (base > 1):
        raise DomainError(f"base must exceed 1, got {base}")
    xc, yc = _coords(x), _coords(y)
    if len(xc) != len(yc):
        raise ShapeError(f"length mismatch: {len(xc)} vs {len(yc)}")
    return MulDistance(math.log(base) * sum(abs(a - b) for a, b in zip(xc, yc)))


def dist_product(d1: MulDistance, d2: MulDistance) -> MulDistance:
    """Product metric on a pair space: distances multiply (logs add)."""
    return MulDistance(d1.log_value + d2.log_value)


def dist_function_sup(f: SampledPosFunction, g: SampledPosFunction) -> MulDistance:
    """Sup metric on sampled positive functions: max pointwise ratio gap."""
    if f.grid != g.grid:
        raise ShapeError("functions must be sampled on the identical grid")
    return MulDistance(float(np.max(np.abs(f._log_values - g._log_values))))


def dist_segment(p: SegmentPoint, q: SegmentPoint) -> MulDistance:
    """Cube-root product metric on the two unit-anchored segments."""
    if not isinstance(p, SegmentPoint) or not isinstance(q, SegmentPoint):
        raise DomainError("dist_segment requires SegmentPoint operands")
    gap = abs(math.log(p.u) - math.log(q.u)) + abs(math.log(p.v) - math.log(q.v))
    return MulDistance(gap / 3.0)


# ---------------------------------------------------------------------------
# balls

@dataclass(frozen=True)
class MulBall:
    """A multiplicative ball: center plus radius eps > 1 (stored as ln eps)."""

    center: object
    log_radius: float
    closed: bool = False

    def __post_init__(self):
        if not (self.log_radius > 0):
            raise DomainError(f"ball radius must exceed 1 (log_radius > 0), "
                              f"got log_radius={self.log_radius}")

    @classmethod
    def open_ball(cls, center, radius: float) -> "MulBall":
        if not (radius > 1):
            raise DomainError(f"radius must exceed 1, got {radius}")
        return cls(center, math.log(radius), closed=False)

    @classmethod
    def closed_ball(cls, center, radius: float) -> "MulBall":
        if not (radius > 1):
            raise DomainError(f"radius must exceed 1, got {radius}")
        return cls(center, math.log(radius), closed=True)


def _dist_fn(dist):
    # accept a bare distance callable or anything carrying a .dist attribute
    return getattr(dist, "dist", dist)


def ball_contains(ball: MulBall, p, dist) -> bool:
    """Membership test: d(center, p) < eps (open) or <= eps (closed)."""
    rho = _dist_fn(dist)(ball.center, p).log_value
    if ball.closed:
        return rho <= ball.log_radius
    return rho < ball.log_radius


def reverse_triangle_gap(x, y, z, dist) -> tuple[MulDistance, MulDistance]:
    """Both sides of the multiplicative reverse triangle inequality.

    Returns (lhs, rhs) with lhs = | d(x,z)/d(y,z) |* and rhs = d(x,y);
    every multiplicative metric satisfies lhs <= rhs.
    """
    d = _dist_fn(dist)
    lhs = MulDistance(abs(d(x, z).log_value - d(y, z).log_value))
    rhs = d(x, y)
    return lhs, rhs
