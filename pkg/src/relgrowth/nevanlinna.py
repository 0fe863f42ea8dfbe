"""Proximity, counting and characteristic functions of a model."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .errors import NonConvergent, SingularNode
from .models import FunctionModel, _is_inf, _shifted, a_points, is_entire, log_abs

TWO_PI = 2.0 * math.pi
START_NODES = 256
NODE_CAP = 2**20
TOL = 1e-10


@dataclass(frozen=True)
class NevanlinnaBreakdown:
    proximity: float
    counting: float
    characteristic: float
    r: float
    a: complex


def _log_plus_mean(h) -> float:
    """(1/2pi) * integral over [0, 2pi) of max(h, 0).

    Smooth positive parts use the periodic trapezoidal rule.  When h changes
    sign on the grid, the crossings are located and only the positive arcs
    are integrated, which avoids the slow convergence of the trapezoidal rule
    across the kink of max(h, 0).
    """
    prev = None
    n = START_NODES
    while n <= NODE_CAP:
        theta = np.arange(n) * (TWO_PI / n)
        v = h(theta)
        if not np.all(np.isfinite(v)):
            raise SingularNode("logarithmic singularity on the contour")
        pos = v > 0
        if pos.all():
            est = float(v.mean())
        elif not pos.any():
            est = 0.0
        else:
            est = _positive_arcs(h, theta, v) / TWO_PI
        if prev is not None and (abs(est - prev) < TOL or abs(est - prev) < TOL * abs(est)):
            return max(est, 0.0)
        prev = est
        n *= 2
    raise NonConvergent("proximity quadrature hit the node cap")


def _positive_arcs(h, theta, v) -> float:
    n = theta.size
    grid = np.append(theta, TWO_PI)
    vals = np.append(v, v[0])

    def scalar(t):
        return float(h(np.array([t]))[0])

    # crossings in cyclic order, tagged with the sign just after them
    crossings = []
    for i in range(n):
        if (vals[i] > 0) != (vals[i + 1] > 0):
            t = optimize.brentq(scalar, grid[i], grid[i + 1], xtol=1e-15, rtol=1e-15)
            crossings.append((t, vals[i + 1] > 0))
    total = 0.0
    for j, (start, rising) in enumerate(crossings):
        if not rising:
            continue
        end = crossings[(j + 1) % len(crossings)][0]
        if end <= start:
            end += TWO_PI
        val, _ = integrate.quad(scalar, start, end, epsabs=1e-13, epsrel=1e-12, limit=200)
        total += val
    return total


def proximity(model: FunctionModel, r: float, a=math.inf) -> float:
    """m_f(r, a): mean of log+|f| (a = inf) or log+ 1/|f - a| on |z| = r."""
    r = float(r)
    if _is_inf(a):
        def h(theta):
            return log_abs(model, r * np.exp(1j * theta))
    else:
        g = _shifted(model, a)

        def h(theta):
            return -log_abs(g, r * np.exp(1j * theta))
    return _log_plus_mean(h)


def counting(model: FunctionModel, r: float, a=math.inf, distinct: bool = False) -> float:
    """N_f(r, a) as a finite sum over the a-points in |z| <= r."""
    r = float(r)
    total = 0.0
    n0 = 0
    for z, mult in a_points(model, r, a):
        weight = 1 if distinct else mult
        if z == 0:
            n0 += weight
        else:
            total += weight * math.log(r / abs(z))
    return total + n0 * math.log(r)


def characteristic(model: FunctionModel, r: float) -> float:
    """T_f(r) = m_f(r, inf) + N_f(r, inf)."""
    m = proximity(model, r)
    if is_entire(model):
        return m
    return m + counting(model, r)


def breakdown(model: FunctionModel, r: float, a=math.inf) -> NevanlinnaBreakdown:
    m = proximity(model, r, a)
    n = 0.0 if _is_inf(a) and is_entire(model) else counting(model, r, a)
    return NevanlinnaBreakdown(m, n, m + n, float(r), complex(a) if a is not None else math.inf)
