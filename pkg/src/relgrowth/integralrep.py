"""Convergence of the integrals that characterize types by a critical exponent.

The integrand is ``F(r) / exp((log^[q-1] r)^A)^(k+1)`` with
``F = log^[p-2] alpha^{-1} beta(r)`` (``log^[-1] = exp``), handled entirely
through its logarithm ``ln F - (k+1) D`` with ``D = (log^[q-1] r)^A``.

Convergence is read off the tail of the log-integrand measured in units of
``ln r``: ``r^s`` is integrable iff ``s < -1``, and a dead band of width
``DELTA`` around that boundary reports ``Indeterminate`` instead of guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline

from .errors import BadBracket
from .indicators import GridSpec, window_size
from .scales import composed
from .tower import iter_log, t_pow, to_float

DELTA = 0.05
# rounding allowance on the band edges, so a bisected bracket closes onto the
# band at its nominal width 2 * DELTA
EDGE_EPS = 1e-12
MAX_BISECTIONS = 40
TAIL_RTOL = 1e-12
MAX_DOUBLINGS = 400


class Verdict(str, Enum):
    CONVERGES = "Converges"
    DIVERGES = "Diverges"
    INDETERMINATE = "Indeterminate"


class LemmaBehavior(str, Enum):
    TENDS_TO_ZERO = "TendsToZero"
    BOUNDED_AWAY = "BoundedAway"
    UNBOUNDED = "Unbounded"
    OSCILLATORY = "Oscillatory"


@dataclass(frozen=True)
class ConvergenceVerdict:
    verdict: Verdict
    decay_slope: float
    tail_bound: Optional[float] = None


@dataclass
class TransitionResult:
    k_lo: float
    k_hi: float
    verdict_table: list = field(default_factory=list)
    limited: bool = False

    @property
    def width(self) -> float:
        return self.k_hi - self.k_lo

    def contains(self, k: float) -> bool:
        return self.k_lo <= k <= self.k_hi


def default_classify_grid() -> GridSpec:
    return GridSpec(1, 1.0, 0.25, 128)


@dataclass(frozen=True)
class _Samples:
    """k-independent parts of the log-integrand on a grid."""

    ln_f: np.ndarray
    d: np.ndarray
    ln_r: np.ndarray
    radii: tuple


def _log_f(alpha, beta, p: int, r) -> float:
    return to_float(iter_log(composed(alpha, beta, r), p - 1))


def _denominator(q: int, A: float, r) -> float:
    return to_float(t_pow(iter_log(r, q - 1), A))


def _sample(alpha, beta, p: int, q: int, A: float, grid: GridSpec) -> _Samples:
    radii = tuple(grid.radii())
    ln_f = np.array([_log_f(alpha, beta, p, r) for r in radii])
    d = np.array([_denominator(q, A, r) for r in radii])
    ln_r = np.array([to_float(iter_log(r, 1)) for r in radii])
    return _Samples(ln_f, d, ln_r, radii)


def integrand_log(alpha, beta, p: int, q: int, A: float, k: float, r) -> float:
    """ln of the integrand at r."""
    return _log_f(alpha, beta, p, r) - (k + 1.0) * _denominator(q, A, r)


def _ls_slope(x: np.ndarray, y: np.ndarray) -> float:
    x = x - x.mean()
    denom = float(np.dot(x, x))
    return float(np.dot(x, y - y.mean()) / denom) if denom > 0 else 0.0


def _tail_bound(samples: _Samples, k: float, start: int) -> Optional[float]:
    """Integral of the integrand from the start of the tail window onward.

    Composite Simpson on [a, 2a], [2a, 4a], ... until a block adds less than
    TAIL_RTOL of the running total.
    """
    try:
        a = to_float(samples.radii[start])
    except OverflowError:
        return None
    j = samples.ln_r.size - 1
    # the log-integrand is affine in ln F and D, both of which are smooth in
    # ln r; spline them on the sampled tail and extrapolate beyond it with a
    # quadratic fit
    xs = samples.ln_r[start:]
    spline_i = CubicSpline(xs, samples.ln_f[start:] - (k + 1.0) * samples.d[start:])
    fit_f = np.polyfit(xs, samples.ln_f[start:], 2)
    fit_d = np.polyfit(xs, samples.d[start:], 2)
    total = 0.0
    for _ in range(MAX_DOUBLINGS):
        b = 2.0 * a
        if not math.isfinite(b):
            return None
        rr = np.geomspace(a, b, 65)
        lr = np.log(rr)
        if lr[-1] <= samples.ln_r[j]:
            ln_i = spline_i(lr)
        else:
            ln_i = np.polyval(fit_f, lr) - (k + 1.0) * np.polyval(fit_d, lr)
        with np.errstate(over="ignore", under="ignore"):
            block = float(simpson(np.exp(ln_i), x=rr))
        if not math.isfinite(block):
            return None
        total += block
        if block <= TAIL_RTOL * total or total == 0.0:
            return total
        a = b
    return None


def _classify_samples(samples: _Samples, k: float) -> ConvergenceVerdict:
    ln_i = samples.ln_f - (k + 1.0) * samples.d
    dj = ln_i / samples.ln_r
    w = window_size(dj.size)
    start = dj.size - w
    tail_x = samples.ln_r[start:]
    tail_i = ln_i[start:]
    tail_d = dj[start:]
    slope = _ls_slope(tail_x, tail_i)
    trend = _ls_slope(np.arange(w, dtype=float), tail_d)
    flat = 1e-9 * max(1.0, float(np.abs(tail_d).max()))
    steps = np.diff(tail_d)
    superlinear = bool(np.all(steps < 0) and tail_d[-1] <= tail_d[0] - 1.0)
    converges = slope <= -(1.0 + DELTA) + EDGE_EPS and trend <= flat
    diverges = int(np.sum(tail_d >= -(1.0 - DELTA) - EDGE_EPS)) >= 3
    if converges and diverges:
        # oscillating tails can fit a steep mean decay while still
        # returning to large values; conflicting evidence is not a verdict
        return ConvergenceVerdict(Verdict.INDETERMINATE, slope)
    if converges:
        bound = _tail_bound(samples, k, start) if superlinear else None
        return ConvergenceVerdict(Verdict.CONVERGES, slope, bound)
    if diverges:
        return ConvergenceVerdict(Verdict.DIVERGES, slope)
    if superlinear:
        bound = _tail_bound(samples, k, start)
        if bound is not None:
            return ConvergenceVerdict(Verdict.CONVERGES, slope, bound)
    return ConvergenceVerdict(Verdict.INDETERMINATE, slope)


def classify(alpha, beta, p: int, q: int, A: float, k: float, grid: GridSpec = None) -> ConvergenceVerdict:
    """Converges / Diverges / Indeterminate for the integral at exponent k."""
    grid = grid or default_classify_grid()
    return _classify_samples(_sample(alpha, beta, p, q, A, grid), k)


def transition(
    alpha,
    beta,
    p: int,
    q: int,
    A: float,
    k_range: tuple,
    tol: float = 0.05,
    grid: GridSpec = None,
) -> TransitionResult:
    """Bracket the critical exponent k* by bisection on classify.

    An Indeterminate midpoint splits the search: each gap between it and the
    Diverges / Converges ends is bisected separately, so the bracket closes
    onto the dead band around k*.
    """
    grid = grid or default_classify_grid()
    samples = _sample(alpha, beta, p, q, A, grid)
    table: dict[float, ConvergenceVerdict] = {}

    def verdict(k: float) -> Verdict:
        if k not in table:
            table[k] = _classify_samples(samples, k)
        return table[k].verdict

    lo, hi = float(k_range[0]), float(k_range[1])
    if not lo < hi:
        raise BadBracket("k range must satisfy lo < hi")
    if verdict(lo) is not Verdict.DIVERGES or verdict(hi) is not Verdict.CONVERGES:
        raise BadBracket(
            f"need Diverges at {lo} and Converges at {hi}, got {verdict(lo).value} and {verdict(hi).value}"
        )
    indeterminate = None
    for _ in range(MAX_BISECTIONS):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        v = verdict(mid)
        if v is Verdict.DIVERGES:
            lo = mid
        elif v is Verdict.CONVERGES:
            hi = mid
        else:
            indeterminate = mid
            break
    if indeterminate is not None:
        a, b = lo, indeterminate
        for _ in range(MAX_BISECTIONS):
            mid = 0.5 * (a + b)
            if verdict(mid) is Verdict.DIVERGES:
                a = mid
            else:
                b = mid
        lo = a
        a, b = indeterminate, hi
        for _ in range(MAX_BISECTIONS):
            mid = 0.5 * (a + b)
            if verdict(mid) is Verdict.CONVERGES:
                b = mid
            else:
                a = mid
        hi = b
    rows = sorted(table.items())
    return TransitionResult(lo, hi, rows, limited=(hi - lo) > tol)


def lemma_ratio(alpha, beta, p: int, q: int, A: float, k: float, grid: GridSpec = None) -> LemmaBehavior:
    """Tail behaviour of ln F - k D, the log of F / exp(D)^k."""
    grid = grid or default_classify_grid()
    samples = _sample(alpha, beta, p, q, A, grid)
    rho = samples.ln_f - k * samples.d
    w = window_size(rho.size)
    tail = rho[-w:]
    x = samples.ln_r[-w:]
    slope = _ls_slope(x, tail)
    steps = np.diff(tail)
    scale = max(1.0, float(np.abs(tail).max()))
    decreasing = bool(np.all(steps <= 1e-12 * scale))
    increasing = bool(np.all(steps >= -1e-12 * scale))
    if decreasing and slope <= -DELTA:
        return LemmaBehavior.TENDS_TO_ZERO
    if increasing and slope >= DELTA:
        return LemmaBehavior.UNBOUNDED
    if abs(slope) < DELTA and (decreasing or increasing or np.ptp(tail) < DELTA):
        return LemmaBehavior.BOUNDED_AWAY
    return LemmaBehavior.OSCILLATORY
