"""Tail-window estimators for relative orders, types and weak types.

Each indicator is a limsup or liminf of a ratio sequence sampled on a grid
``r_j = exp^[q_anchor](t0 + j*h)``.  The estimate is the extremum over the
last ``W = max(8, J // 4)`` ratios; the remaining fields of
:class:`IndicatorEstimate` say how settled that tail is.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGrid
from .scales import GrowthScale, SinLogScale, composed, scale_eval, scale_inverse
from .tower import TowerReal, iter_exp, iter_log, t_pow, t_ratio, to_float

LIMSUP_KINDS = frozenset({"rho", "sigma", "tau_bar"})
LIMINF_KINDS = frozenset({"lambda", "sigma_bar", "tau"})
MIN_POINTS = 16


@dataclass(frozen=True)
class GridSpec:
    q_anchor: int
    t0: float = 2.0
    h: float = 0.5
    J: int = 64

    def __post_init__(self):
        if self.q_anchor < 0 or self.h <= 0 or self.J < 1:
            raise ValueError(f"invalid grid {self}")

    def params(self) -> np.ndarray:
        return self.t0 + self.h * np.arange(self.J)

    def radii(self) -> list[TowerReal]:
        return [iter_exp(float(t), self.q_anchor) for t in self.params()]


@dataclass(frozen=True)
class IndicatorEstimate:
    value: float
    tail_values: tuple
    envelope_slope: float
    spread: float
    kind: str
    divergent: bool = False


def window_size(J: int) -> int:
    return max(8, J // 4)


def _uses_sinlog(*scales) -> bool:
    return any(isinstance(s, SinLogScale) for s in scales)


def default_order_grid(q: int, alpha=None, beta=None) -> GridSpec:
    """Order grid anchored one level above q.

    The order ratios approach their limit like 1/log^[q] r, so anchoring at
    q + 1 makes the tail sit at log^[q] r of order e^26 and the bias vanish.
    """
    return GridSpec(q + 1, 2.0, 0.5, 256 if _uses_sinlog(alpha, beta) else 64)


def default_type_grid(q: int, alpha=None, beta=None) -> GridSpec:
    return GridSpec(q, 2.0, 0.5, 256 if _uses_sinlog(alpha, beta) else 64)


def default_inverse_grid(q: int, alpha=None, beta=None) -> GridSpec:
    """R-grid anchored at q + 1, started above both scale ranges."""
    t0, h = 2.0, 0.5
    floor = [scale_eval(s, s.x0) for s in (alpha, beta) if s is not None]
    while any(iter_exp(t0, q + 1) < y for y in floor):
        t0 += h
    return GridSpec(q + 1, t0, h, 256 if _uses_sinlog(alpha, beta) else 64)


def summarize(kind: str, ratios, ts) -> IndicatorEstimate:
    """Reduce a ratio sequence to a limsup/liminf estimate over its tail."""
    ratios = np.asarray(ratios, dtype=float)
    ts = np.asarray(ts, dtype=float)
    if ratios.size < MIN_POINTS:
        raise DegenerateGrid(f"need at least {MIN_POINTS} grid points, got {ratios.size}")
    w = window_size(ratios.size)
    tail = ratios[-w:]
    tail_t = ts[-w:]
    if kind in LIMSUP_KINDS:
        value = float(tail.max())
    elif kind in LIMINF_KINDS:
        value = float(tail.min())
    else:
        raise ValueError(f"unknown indicator kind {kind!r}")
    spread = float(tail.max() - tail.min())
    inv_t = 1.0 / tail_t
    if np.ptp(inv_t) > 0:
        slope = float(np.polyfit(inv_t, tail, 1)[0])
    else:
        slope = 0.0
    steps = np.diff(tail)
    monotone = bool(np.all(steps >= 0) or np.all(steps <= 0))
    divergent = monotone and spread > 0.5 * max(abs(value), 1e-300)
    return IndicatorEstimate(value, tuple(float(v) for v in tail), slope, spread, kind, divergent)


def order_ratios(alpha: GrowthScale, beta: GrowthScale, p: int, q: int, grid: GridSpec) -> np.ndarray:
    """log^[p] alpha^{-1} beta(r_j) / log^[q] r_j."""
    out = []
    for r in grid.radii():
        num = iter_log(composed(alpha, beta, r), p)
        den = iter_log(r, q)
        out.append(to_float(num) / to_float(den))
    return np.array(out)


def type_ratios(
    alpha: GrowthScale, beta: GrowthScale, p: int, q: int, exponent: float, grid: GridSpec
) -> np.ndarray:
    """log^[p-1] alpha^{-1} beta(r_j) / (log^[q-1] r_j)^exponent.

    Shared by the type and weak-type estimators, so equal exponents give
    identical sequences.
    """
    out = []
    for r in grid.radii():
        v = iter_log(composed(alpha, beta, r), p - 1)
        u = t_pow(iter_log(r, q - 1), exponent)
        out.append(t_ratio(v, u))
    return np.array(out)


def rel_order(alpha, beta, p: int, q: int, grid: GridSpec = None):
    """(rho, lambda): limsup and liminf of the order ratios."""
    grid = grid or default_order_grid(q, alpha, beta)
    ratios = order_ratios(alpha, beta, p, q, grid)
    ts = grid.params()
    return summarize("rho", ratios, ts), summarize("lambda", ratios, ts)


def rel_type(alpha, beta, p: int, q: int, rho: float, grid: GridSpec = None):
    """(sigma, sigma_bar) against the rho-th power of log^[q-1] r."""
    grid = grid or default_type_grid(q, alpha, beta)
    ratios = type_ratios(alpha, beta, p, q, rho, grid)
    ts = grid.params()
    return summarize("sigma", ratios, ts), summarize("sigma_bar", ratios, ts)


def rel_weak_type(alpha, beta, p: int, q: int, lam: float, grid: GridSpec = None):
    """(tau, tau_bar) against the lambda-th power of log^[q-1] r."""
    grid = grid or default_type_grid(q, alpha, beta)
    ratios = type_ratios(alpha, beta, p, q, lam, grid)
    ts = grid.params()
    return summarize("tau", ratios, ts), summarize("tau_bar", ratios, ts)


def inverse_form_ratios(
    alpha: GrowthScale, beta: GrowthScale, p: int, q: int, exponent: float, grid: GridSpec
) -> np.ndarray:
    """log^[p-1] alpha^{-1}(R) / (log^[q-1] beta^{-1}(R))^exponent over an R-grid."""
    out = []
    for big_r in grid.radii():
        v = iter_log(scale_inverse(alpha, big_r), p - 1)
        u = t_pow(iter_log(scale_inverse(beta, big_r), q - 1), exponent)
        out.append(t_ratio(v, u))
    return np.array(out)


def rel_type_inverse_form(
    alpha, beta, p: int, q: int, exponent: float, kind: str, grid: GridSpec = None
) -> IndicatorEstimate:
    """Type-like indicator with the radius reparametrized by R = beta(r).

    ``kind`` is ``"limsup"`` or ``"liminf"``.
    """
    if kind not in ("limsup", "liminf"):
        raise ValueError("kind must be 'limsup' or 'liminf'")
    grid = grid or default_inverse_grid(q, alpha, beta)
    ratios = inverse_form_ratios(alpha, beta, p, q, exponent, grid)
    return summarize("sigma" if kind == "limsup" else "sigma_bar", ratios, grid.params())
