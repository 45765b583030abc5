"""Sampling-based certification or refutation of metric and contraction axioms.

A passing report is a statistical certificate only (the sampler cannot
exhaust a continuum), so every report carries sampled_not_proved = True.
A failing report is sound: each witness stores the exact inputs and the
measured values, and re-evaluating it reproduces the violation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import InputError
from .metric_core import MulDistance

DEFAULT_SLACK_LOG = 1e-10


def _log_of(d) -> float:
    """Log-domain value of a candidate distance result.

    Accepts a MulDistance or a plain value d (the candidate need not be a
    valid multiplicative metric, so plain values below 1 are allowed and
    map to negative logs, which the m1 check then flags).
    """
    if isinstance(d, MulDistance):
        return d.log_value
    if not (d > 0):
        raise InputError(f"candidate distance returned a nonpositive value: {d}")
    return math.log(d)


@dataclass(frozen=True)
class Witness:
    axiom: str
    points: tuple
    values: tuple


@dataclass
class AxiomReport:
    m1_ok: bool
    m2_ok: bool
    m3_ok: bool
    reverse_ok: bool
    witnesses: list[Witness]
    samples_used: int
    seed: int
    slack_log: float
    sampled_not_proved: bool = True

    @property
    def all_ok(self) -> bool:
        return self.m1_ok and self.m2_ok and self.m3_ok and self.reverse_ok


@dataclass
class ContractionReport:
    kind: str
    lam: float
    condition_ok: bool
    witnesses: list[Witness]
    samples_used: int
    seed: int
    slack_log: float
    sampled_not_proved: bool = True


def verify_axioms(distance: Callable, sampler: Callable, n_samples: int,
                  seed: int = 0, slack_log: float = DEFAULT_SLACK_LOG,
                  points_equal: Optional[Callable] = None) -> AxiomReport:
    """Sample pairs and triples and test m1-m3 plus the reverse inequality.

    m1 is checked in both directions: d(x, x) must be 1, every sampled pair
    must have d >= 1, and (when a points_equal predicate is supplied) a
    distance of 1 between distinct points is flagged.
    """
    if n_samples < 1:
        raise InputError("n_samples must be >= 1")
    rng = random.Random(seed)
    m1_ok = m2_ok = m3_ok = reverse_ok = True
    witnesses: list[Witness] = []

    def flag(axiom, points, values):
        witnesses.append(Witness(axiom, points, values))

    for _ in range(n_samples):
        x, y, z = sampler(rng), sampler(rng), sampler(rng)
        dxy = _log_of(distance(x, y))
        dyx = _log_of(distance(y, x))
        dxz = _log_of(distance(x, z))
        dyz = _log_of(distance(y, z))
        dxx = _log_of(distance(x, x))

        if dxy < -slack_log:
            m1_ok = False
            flag("m1", (x, y), (dxy,))
        if abs(dxx) > slack_log:
            m1_ok = False
            flag("m1", (x, x), (dxx,))
        if points_equal is not None and dxy <= slack_log and not points_equal(x, y):
            m1_ok = False
            flag("m1", (x, y), (dxy,))
        if abs(dxy - dyx) > slack_log:
            m2_ok = False
            flag("m2", (x, y), (dxy, dyx))
        if dxz > dxy + dyz + slack_log:
            m3_ok = False
            flag("m3", (x, y, z), (dxz, dxy, dyz))
        if abs(dxz - dyz) > dxy + slack_log:
            reverse_ok = False
            flag("reverse", (x, y, z), (abs(dxz - dyz), dxy))

    return AxiomReport(m1_ok, m2_ok, m3_ok, reverse_ok, witnesses,
                       n_samples, seed, slack_log)


def verify_contraction(map_: Callable, distance: Callable, kind: str, lam: float,
                       sampler: Callable, n_samples: int, seed: int = 0,
                       slack_log: float = DEFAULT_SLACK_LOG) -> ContractionReport:
    """Test the contraction inequality of the given kind on sampled pairs."""
    if n_samples < 1:
        raise InputError("n_samples must be >= 1")
    if kind not in ("banach", "kannan", "chatterjea"):
        raise InputError(f"unknown contraction kind {kind!r}")
    hi = 1.0 if kind == "banach" else 0.5
    if not (0.0 <= lam < hi):
        raise InputError(f"{kind} constant must lie in [0, {hi}), got {lam}")

    rng = random.Random(seed)
    ok = True
    witnesses: list[Witness] = []
    for _ in range(n_samples):
        x, y = sampler(rng), sampler(rng)
        fx, fy = map_(x), map_(y)
        lhs = _log_of(distance(fx, fy))
        if kind == "banach":
            rhs = lam * _log_of(distance(x, y))
        elif kind == "kannan":
            rhs = lam * (_log_of(distance(fx, x)) + _log_of(distance(fy, y)))
        else:
            rhs = lam * (_log_of(distance(fx, y)) + _log_of(distance(fy, x)))
        if lhs > rhs + slack_log:
            ok = False
            witnesses.append(Witness(kind, (x, y), (lhs, rhs)))

    return ContractionReport(kind, lam, ok, witnesses, n_samples, seed, slack_log)
