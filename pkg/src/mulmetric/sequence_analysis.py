"""Finite-sequence diagnostics for multiplicative convergence.

Asymptotic statements ("for all n >= N ...") are checked on finite data
with a tail-window policy: the verdict looks at the final quarter of the
indices, never fewer than eight of them.  Tolerances are log-domain
throughout, so "d < eps" is tested as "ln d < ln eps".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InputError
from .metric_core import MulDistance, mabs
from .spaces import SpaceInstance

TAIL_FRACTION = 0.25
MIN_TAIL_WINDOW = 8


@dataclass(frozen=True)
class SeqDiagnostic:
    """Verdict of one diagnostic; witnesses name the violation when false."""

    verdict: bool
    witness_index: Optional[int] = None
    witness_value: Optional[MulDistance] = None
    detail: str = ""

    def __post_init__(self):
        if self.verdict:
            assert self.witness_index is None and self.witness_value is None
        else:
            assert self.witness_index is not None


@dataclass(frozen=True)
class BoundReport:
    """Multiplicative bound from the Cauchy-implies-bounded construction."""

    center_index: int
    M: float

    def __post_init__(self):
        assert self.M > 1


def tail_start(n: int) -> int:
    """First index of the tail window for a length-n sequence."""
    window = max(MIN_TAIL_WINDOW, math.ceil(TAIL_FRACTION * n))
    return max(0, n - window)


def convergence_diagnostic(seq: Sequence, limit, space: SpaceInstance,
                           tol_log: float) -> SeqDiagnostic:
    """Does ln d(x_n, limit) stay below tol_log over the tail window?"""
    if len(seq) == 0:
        raise InputError("empty sequence")
    if not (tol_log > 0):
        raise InputError(f"tol_log must be positive, got {tol_log}")
    start = tail_start(len(seq))
    worst_i, worst = None, -1.0
    for i in range(start, len(seq)):
        rho = space.dist(seq[i], limit).log_value
        if rho > worst:
            worst_i, worst = i, rho
    if worst <= tol_log:
        return SeqDiagnostic(True, detail=f"tail max ln d = {worst:.3e} <= {tol_log:.3e}")
    return SeqDiagnostic(False, worst_i, MulDistance(worst),
                         f"ln d(x_{worst_i}, limit) = {worst:.3e} > {tol_log:.3e}")


def cauchy_diagnostic(seq: Sequence, space: SpaceInstance, tol_log: float,
                      window: int | None = None) -> SeqDiagnostic:
    """Are all pairwise distances within the final window below tol_log?"""
    if len(seq) == 0:
        raise InputError("empty sequence")
    if window is None:
        window = len(seq) - tail_start(len(seq))
    if window < 1:
        raise InputError("window must be >= 1")
    if window > len(seq):
        raise InputError(f"window {window} exceeds sequence length {len(seq)}")
    start = len(seq) - window
    worst, worst_pair = -1.0, None
    for i in range(start, len(seq)):
        for j in range(i + 1, len(seq)):
            rho = space.dist(seq[i], seq[j]).log_value
            if rho > worst:
                worst, worst_pair = rho, (i, j)
    if worst <= tol_log:
        return SeqDiagnostic(True, detail=f"window max ln d = {worst:.3e} <= {tol_log:.3e}")
    i, j = worst_pair
    return SeqDiagnostic(False, i, MulDistance(worst),
                         f"ln d(x_{i}, x_{j}) = {worst:.3e} > {tol_log:.3e}")


def bounded_diagnostic(seq: Sequence, space: SpaceInstance) -> BoundReport:
    """Bound M > 1 and center index via the eps = 2 Cauchy-tail construction.

    The center n0 is the earliest index whose tail has all pairwise
    distances below 2; M = max{2, distances of the earlier elements to the
    center}.  Every element then satisfies d(x_n, x_n0) <= M.
    """
    if len(seq) == 0:
        raise InputError("empty sequence")
    ln2 = math.log(2.0)
    logs = [[space.dist(a, b).log_value for b in seq] for a in seq]
    n0 = len(seq) - 1
    for cand in range(len(seq)):
        if all(logs[i][j] < ln2
               for i in range(cand, len(seq)) for j in range(i + 1, len(seq))):
            n0 = cand
            break
    m_log = max([ln2] + [logs[k][n0] for k in range(n0)])
    assert all(logs[n][n0] <= m_log + 1e-12 for n in range(len(seq)))
    return BoundReport(center_index=n0, M=math.exp(m_log))


def _check_extremum(A: Sequence[float], cand: float, eps_schedule: Sequence[float],
                    supremum: bool) -> SeqDiagnostic:
    if len(A) == 0:
        raise InputError("empty set")
    if not (cand > 0) or any(not (a > 0) for a in A):
        raise InputError("all elements and the candidate must be positive")
    if any(not (eps > 1) for eps in eps_schedule):
        raise InputError("every epsilon in the schedule must exceed 1")
    elems = list(A)
    word = "sup" if supremum else "inf"
    for i, a in enumerate(elems):
        if (supremum and a > cand) or (not supremum and a < cand):
            return SeqDiagnostic(False, i, mabs(cand / a),
                                 f"element {a} violates the {word} bound {cand}")
    for k, eps in enumerate(eps_schedule):
        gaps = [mabs(cand / a).log_value for a in elems]
        if min(gaps) >= math.log(eps):
            return SeqDiagnostic(False, k, MulDistance(min(gaps)),
                                 f"no element within multiplicative eps={eps} of {word}={cand}")
    return SeqDiagnostic(True, detail=f"{word} characterization holds for {cand}")


def check_supremum(A: Sequence[float], s: float,
                   eps_schedule: Sequence[float]) -> SeqDiagnostic:
    """Multiplicative supremum characterization: a <= s plus eps-approach."""
    return _check_extremum(A, s, eps_schedule, supremum=True)


def check_infimum(A: Sequence[float], m: float,
                  eps_schedule: Sequence[float]) -> SeqDiagnostic:
    """Multiplicative infimum characterization: m <= a plus eps-approach."""
    return _check_extremum(A, m, eps_schedule, supremum=False)


def monotone_subsequence(seq: Sequence[float]) -> list[int]:
    """Indices of a monotone subsequence via the classical peak construction.

    A peak is an index whose value dominates everything after it; the peaks
    themselves form a non-increasing subsequence.  When they are few, a
    non-decreasing chain is grown greedily instead, and the longer of the
    two candidates wins.
    """
    n = len(seq)
    if n == 0:
        raise InputError("empty sequence")
    peaks = []
    running_max = -math.inf
    for i in range(n - 1, -1, -1):
        if seq[i] >= running_max:
            peaks.append(i)
            running_max = seq[i]
    peaks.reverse()

    chain = []
    i = next((k for k in range(n) if k not in set(peaks)), None)
    if i is not None:
        chain.append(i)
        while True:
            j = next((k for k in range(i + 1, n) if seq[k] >= seq[i]), None)
            if j is None:
                break
            chain.append(j)
            i = j
    return chain if len(chain) > len(peaks) else peaks


def bw_extract(seq: Sequence[float], M: float,
               space: SpaceInstance | None = None) -> tuple[list[int], float]:
    """Convergent-subsequence extraction for bounded positive sequences.

    Requires every element inside the multiplicative bound [1/M, M].
    Returns the monotone subsequence indices plus its sup (non-decreasing
    branch) or inf (non-increasing branch) as the limit estimate.
    """
    if len(seq) == 0:
        raise InputError("empty sequence")
    if not (M > 1):
        raise InputError(f"bound M must exceed 1, got {M}")
    for i, x in enumerate(seq):
        if not (1.0 / M <= x <= M):
            raise InputError(f"element {x} at index {i} violates bound [{1/M}, {M}]")
    idx = monotone_subsequence(seq)
    vals = [seq[i] for i in idx]
    non_decreasing = all(b >= a for a, b in zip(vals, vals[1:]))
    limit = max(vals) if non_decreasing else min(vals)
    return idx, limit


def continuity_probe(fn, x, trial_sequences: Sequence[Sequence],
                     domain: SpaceInstance, tol_log: float,
                     codomain: SpaceInstance | None = None) -> SeqDiagnostic:
    """Sequential continuity check of fn at x.

    Each trial sequence must already converge to x in the domain metric.
    The verdict is whether every image sequence converges to fn(x) in the
    codomain metric; codomain=None means the ordinary real line, where the
    gap is |fn(x_n) - fn(x)| compared against tol_log directly.
    """
    if len(trial_sequences) == 0:
        raise InputError("need at least one trial sequence")
    for k, trial in enumerate(trial_sequences):
        diag = convergence_diagnostic(trial, x, domain, tol_log)
        if not diag.verdict:
            raise InputError(f"trial sequence {k} does not converge to x: {diag.detail}")
    fx = fn(x)
    for k, trial in enumerate(trial_sequences):
        images = [fn(p) for p in trial]
        start = tail_start(len(images))
        for i in range(start, len(images)):
            if codomain is None:
                gap = abs(images[i] - fx)
            else:
                gap = codomain.dist(images[i], fx).log_value
            if gap > tol_log:
                return SeqDiagnostic(False, i, MulDistance(gap),
                                     f"trial {k}: image gap {gap:.3e} > {tol_log:.3e} at index {i}")
    return SeqDiagnostic(True, detail=f"{len(trial_sequences)} trial sequences transported")
