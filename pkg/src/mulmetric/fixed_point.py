"""Picard solvers for multiplicative contraction mappings.

Three contraction classes are supported:

  banach      d(fx, fy) <= d(x, y)^lambda,               lambda in [0, 1)
  kannan      d(fx, fy) <= (d(fx, x) * d(fy, y))^lambda, lambda in [0, 1/2)
  chatterjea  d(fx, fy) <= (d(fx, y) * d(fy, x))^lambda, lambda in [0, 1/2)

All three drive the same geometric step chain; for the latter two the
effective per-step rate is h = lambda / (1 - lambda).  The solvers stop on
the geometric-series tail bounds (a-priori from the first step, a-posteriori
from the latest step), both tracked per iteration in the trace, and they
monitor the observed step ratios so that a wrong lambda surfaces as an
InvariantBreachError instead of silently broken bounds.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import (
    EstimationError,
    InputError,
    InvariantBreachError,
    PreconditionError,
)
from .spaces import SelfMap, SpaceInstance

DEFAULT_TOL_LOG = 1e-12
DEFAULT_MAX_ITER = 10**6

#: absolute slack for the per-step geometric-decay monitor
STEP_CHAIN_SLACK = 1e-12

KINDS = ("banach", "kannan", "chatterjea")


@dataclass(frozen=True)
class ContractionSpec:
    """Contraction class plus its constant."""

    kind: str
    lam: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown contraction kind {self.kind!r}")
        hi = 1.0 if self.kind == "banach" else 0.5
        if not (0.0 <= self.lam < hi):
            raise InputError(f"{self.kind} constant must lie in [0, {hi}), got {self.lam}")

    @property
    def rate(self) -> float:
        """Per-step geometric rate: lambda for banach, lambda/(1-lambda) otherwise."""
        if self.kind == "banach":
            return self.lam
        return self.lam / (1.0 - self.lam)


@dataclass(frozen=True)
class TraceStep:
    n: int
    point: object
    step_log: float          # ln d(x_{n+1}, x_n)
    apriori_log: float       # (rate^n / (1-rate)) * ln d(x_1, x_0), bounds ln d(x_n, z)
    aposteriori_log: float   # (rate / (1-rate)) * step_log, bounds ln d(x_{n+1}, z)


@dataclass
class IterationTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)


@dataclass
class SolverReport:
    fixed_point: object
    residual_log: float
    iterations: int
    converged: bool
    trace: IterationTrace
    uniqueness: Optional["UniquenessProbe"] = None


@dataclass
class UniquenessProbe:
    fixed_points: list
    failures: list           # (start index, reason)
    max_pairwise_log: float
    ok: bool


def apriori_bound(d10_log: float, rate: float, n: int) -> float:
    """Geometric tail bound (rate^n / (1 - rate)) * d10_log on ln d(x_n, z)."""
    if not (0.0 <= rate < 1.0):
        raise InputError(f"rate must lie in [0, 1), got {rate}")
    if d10_log < 0:
        raise InputError("d10_log must be nonnegative")
    return (rate**n / (1.0 - rate)) * d10_log


def _picard(map_: SelfMap, x0, rate: float, tol_log: float, max_iter: int,
            ball_center=None, ball_log_radius: float | None = None) -> SolverReport:
    """Shared Picard driver with geometric stopping and ratio monitoring."""
    if not (tol_log > 0):
        raise InputError(f"tol_log must be positive, got {tol_log}")
    space = map_.space
    trace = IterationTrace()

    x = x0
    fx = map_(x)
    d10_log = space.dist(fx, x).log_value
    if d10_log <= tol_log:
        # degenerate start: x0 already (numerically) fixed
        trace.steps.append(TraceStep(0, x, d10_log, apriori_bound(d10_log, rate, 0),
                                     (rate / (1.0 - rate)) * d10_log))
        return SolverReport(x, d10_log, 0, True, trace)

    prev_step_log = None
    for n in range(max_iter):
        step_log = space.dist(fx, x).log_value
        if prev_step_log is not None and step_log > prev_step_log * rate + STEP_CHAIN_SLACK:
            raise InvariantBreachError(
                f"step {n}: ln d(x_n+1, x_n) = {step_log:.6e} exceeds "
                f"rate * previous = {prev_step_log * rate:.6e}; the supplied "
                f"contraction constant appears too small")
        apr = apriori_bound(d10_log, rate, n)
        apo = (rate / (1.0 - rate)) * step_log
        trace.steps.append(TraceStep(n, x, step_log, apr, apo))

        if ball_log_radius is not None:
            drift = space.dist(fx, ball_center).log_value
            if drift > ball_log_radius + STEP_CHAIN_SLACK:
                raise InvariantBreachError(
                    f"iterate {n + 1} left the closed ball: ln d(x, x0) = "
                    f"{drift:.6e} > ln eps = {ball_log_radius:.6e}")

        x, fx = fx, map_(fx)
        # bounds on ln d(x_{n+1}, z): fresh a-priori and the a-posteriori above
        if min(apriori_bound(d10_log, rate, n + 1), apo) <= tol_log:
            residual_log = space.dist(fx, x).log_value
            trace.steps.append(TraceStep(n + 1, x, residual_log,
                                         apriori_bound(d10_log, rate, n + 1),
                                         (rate / (1.0 - rate)) * residual_log))
            return SolverReport(x, residual_log, n + 1, True, trace)
        prev_step_log = step_log

    residual_log = space.dist(map_(x), x).log_value
    return SolverReport(x, residual_log, max_iter, False, trace)


def banach_solve(map_: SelfMap, x0, spec: ContractionSpec,
                 tol_log: float = DEFAULT_TOL_LOG,
                 max_iter: int = DEFAULT_MAX_ITER) -> SolverReport:
    """Picard iteration under the multiplicative Banach condition."""
    if spec.kind != "banach":
        raise InputError(f"banach_solve requires a banach spec, got {spec.kind}")
    return _picard(map_, x0, spec.rate, tol_log, max_iter)


def ball_solve(map_: SelfMap, x0, epsilon: float, spec: ContractionSpec,
               tol_log: float = DEFAULT_TOL_LOG,
               max_iter: int = DEFAULT_MAX_ITER) -> SolverReport:
    """Banach solve restricted to the closed ball of radius epsilon at x0.

    Admissible only when d(fx0, x0) <= epsilon^(1-lambda); with that
    precondition the closed ball is invariant and contains the fixed point,
    so every iterate is checked against the ball and a breach flags a wrong
    lambda.
    """
    if spec.kind != "banach":
        raise InputError(f"ball_solve requires a banach spec, got {spec.kind}")
    if not (epsilon > 1):
        raise InputError(f"epsilon must exceed 1, got {epsilon}")
    space = map_.space
    first_log = space.dist(map_(x0), x0).log_value
    budget = (1.0 - spec.lam) * math.log(epsilon)
    if first_log > budget + STEP_CHAIN_SLACK:
        raise PreconditionError(
            f"ln d(fx0, x0) = {first_log:.6e} exceeds (1-lambda) ln eps = {budget:.6e}",
            measured=first_log)
    return _picard(map_, x0, spec.rate, tol_log, max_iter,
                   ball_center=x0, ball_log_radius=math.log(epsilon))


def power_solve(map_: SelfMap, n_power: int, spec: ContractionSpec, x0,
                tol_log: float = DEFAULT_TOL_LOG,
                max_iter: int = DEFAULT_MAX_ITER) -> SolverReport:
    """Solve via the n-fold composition f^n, then certify z fixes f itself."""
    if n_power < 1:
        raise InputError(f"n_power must be >= 1, got {n_power}")

    def composed(p):
        for _ in range(n_power):
            p = map_(p)
        return p

    inner = SelfMap(f"{map_.name}^{n_power}", composed, map_.space)
    report = banach_solve(inner, x0, spec, tol_log, max_iter)
    if report.converged:
        z = report.fixed_point
        f_residual = map_.space.dist(map_(z), z).log_value
        if f_residual > tol_log:
            raise InvariantBreachError(
                f"fixed point of the composition does not fix the map itself: "
                f"ln d(fz, z) = {f_residual:.6e} > {tol_log:.6e}")
        report.residual_log = f_residual
    return report


def _generalized_solve(map_: SelfMap, x0, spec: ContractionSpec, kind: str,
                       tol_log: float, max_iter: int) -> SolverReport:
    if spec.kind != kind:
        raise InputError(f"{kind}_solve requires a {kind} spec, got {spec.kind}")
    return _picard(map_, x0, spec.rate, tol_log, max_iter)


def kannan_solve(map_: SelfMap, x0, spec: ContractionSpec,
                 tol_log: float = DEFAULT_TOL_LOG,
                 max_iter: int = DEFAULT_MAX_ITER) -> SolverReport:
    """Picard iteration under the Kannan-type condition (rate h = lam/(1-lam))."""
    return _generalized_solve(map_, x0, spec, "kannan", tol_log, max_iter)


def chatterjea_solve(map_: SelfMap, x0, spec: ContractionSpec,
                     tol_log: float = DEFAULT_TOL_LOG,
                     max_iter: int = DEFAULT_MAX_ITER) -> SolverReport:
    """Picard iteration under the Chatterjea-type condition (same rate h)."""
    return _generalized_solve(map_, x0, spec, "chatterjea", tol_log, max_iter)


def solve(map_: SelfMap, x0, spec: ContractionSpec,
          tol_log: float = DEFAULT_TOL_LOG,
          max_iter: int = DEFAULT_MAX_ITER) -> SolverReport:
    """Dispatch on the contraction kind."""
    if spec.kind == "banach":
        return banach_solve(map_, x0, spec, tol_log, max_iter)
    if spec.kind == "kannan":
        return kannan_solve(map_, x0, spec, tol_log, max_iter)
    return chatterjea_solve(map_, x0, spec, tol_log, max_iter)


def estimate_lambda(map_: SelfMap, n_pairs: int, kind: str = "banach",
                    seed: int = 0,
                    sampler: Callable | None = None) -> tuple[float, tuple]:
    """Empirical contraction constant: max log-ratio over sampled pairs.

    The denominator depends on the kind: d(x, y) for banach,
    d(fx, x) * d(fy, y) for kannan, d(fx, y) * d(fy, x) for chatterjea.
    Pairs whose denominator is numerically zero are skipped.
    """
    if n_pairs < 1:
        raise InputError("n_pairs must be >= 1")
    if kind not in KINDS:
        raise InputError(f"unknown contraction kind {kind!r}")
    space = map_.space
    draw = sampler or space.sample
    rng = random.Random(seed)
    best, witness = None, None
    for _ in range(n_pairs):
        x, y = draw(rng), draw(rng)
        fx, fy = map_(x), map_(y)
        num = space.dist(fx, fy).log_value
        if kind == "banach":
            den = space.dist(x, y).log_value
        elif kind == "kannan":
            den = space.dist(fx, x).log_value + space.dist(fy, y).log_value
        else:
            den = space.dist(fx, y).log_value + space.dist(fy, x).log_value
        if den <= 1e-12:
            continue
        ratio = num / den
        if best is None or ratio > best:
            best, witness = ratio, (x, y)
    if best is None:
        raise EstimationError("all sampled pairs were degenerate")
    return best, witness


def uniqueness_probe(map_: SelfMap, spec: ContractionSpec, starts: Sequence,
                     tol_log: float = DEFAULT_TOL_LOG,
                     max_iter: int = DEFAULT_MAX_ITER) -> UniquenessProbe:
    """Solve from every start and check the limits agree pairwise.

    Divergent or breaching starts are recorded and skipped; the probe is ok
    when at least one start converged and all converged limits lie within
    2 * tol_log of each other in log distance.
    """
    if len(starts) < 2:
        raise InputError("need at least two starts")
    space = map_.space
    points, failures = [], []
    for i, x0 in enumerate(starts):
        try:
            report = solve(map_, x0, spec, tol_log, max_iter)
        except (InvariantBreachError, PreconditionError) as exc:
            failures.append((i, str(exc)))
            continue
        if report.converged:
            points.append(report.fixed_point)
        else:
            failures.append((i, f"no convergence in {max_iter} iterations"))
    worst = 0.0
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            worst = max(worst, space.dist(points[i], points[j]).log_value)
    ok = bool(points) and worst <= 2.0 * tol_log
    return UniquenessProbe(points, failures, worst, ok)
