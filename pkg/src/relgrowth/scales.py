"""Growth scales: positive increasing functions with evaluation and inverse.

The closed-form family ``exp^[m](c * (log^[n] x)^a)`` is closed under
composition and inversion, so it supplies exact answers for the indicator
tests.  The sine-log scale oscillates between two exponential rates, and the
derived scales wrap the maximum modulus or characteristic of a model.
"""

from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy import optimize
from scipy.interpolate import PchipInterpolator

from .errors import (
    BelowDomain,
    BelowRange,
    DomainError,
    NonLevelZero,
    Overflow,
    PoleOnCircle,
    SingularNode,
)
from .models import FunctionModel, max_modulus
from .nevanlinna import characteristic
from .tower import (
    TowerReal,
    iter_exp,
    iter_log,
    t_cmp,
    t_exp,
    t_log,
    t_mul,
    t_pow,
    to_float,
)

FLOAT_CEIL = 1e300
INVERSE_RTOL = 1e-12
TABLE_POINTS = 256
MAX_LEVEL = 6


def _iterated_threshold(n: int) -> float:
    if n == 0:
        return 1.0
    if n <= 2:
        return 3.0
    return to_float(iter_exp(1.0, n - 1)) + 1.0


@dataclass(frozen=True)
class IteratedScale:
    """exp^[m](c * (log^[n] x)^a)."""

    m: int = 1
    n: int = 0
    a: float = 1.0
    c: float = 1.0
    x0: float = None

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise DomainError("m and n must be non-negative")
        if not (self.a > 0 and self.c > 0):
            raise DomainError("a and c must be positive")
        if self.x0 is None:
            object.__setattr__(self, "x0", _iterated_threshold(self.n))


@dataclass(frozen=True)
class SinLogScale:
    """exp(x * (2 + sin(log x)))."""

    x0: float = math.e


@dataclass(frozen=True)
class DerivedMaxMod:
    """r -> M_f(r)."""

    model: FunctionModel
    x0: float = 1.0


@dataclass(frozen=True)
class DerivedCharacteristic:
    """r -> T_f(r); inverse queries are bracketed by a lazily built table."""

    model: FunctionModel
    x0: float = math.e
    _table: dict = field(default_factory=dict, compare=False, hash=False, repr=False)
    _lock: threading.Lock = field(
        default_factory=threading.Lock, compare=False, hash=False, repr=False
    )


@dataclass(frozen=True)
class TabulatedMonotone:
    """Monotone piecewise-cubic interpolation of strictly increasing samples."""

    xs: tuple
    ys: tuple
    _interp: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        xs = tuple(float(v) for v in self.xs)
        ys = tuple(float(v) for v in self.ys)
        if len(xs) != len(ys) or len(xs) < 2:
            raise DomainError("need at least two (x, y) samples")
        if any(b <= a for a, b in zip(xs, xs[1:])) or any(b <= a for a, b in zip(ys, ys[1:])):
            raise DomainError("samples must be strictly increasing")
        if ys[0] <= 0:
            raise DomainError("samples must be positive")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @property
    def x0(self) -> float:
        return self.xs[0]

    def interpolator(self) -> PchipInterpolator:
        if "f" not in self._interp:
            self._interp["f"] = PchipInterpolator(np.array(self.xs), np.array(self.ys))
        return self._interp["f"]


GrowthScale = Union[IteratedScale, SinLogScale, DerivedMaxMod, DerivedCharacteristic, TabulatedMonotone]


def exp_scale() -> IteratedScale:
    return IteratedScale(1, 0, 1.0, 1.0)


def _float_radius(x: TowerReal) -> float:
    try:
        return to_float(x)
    except Overflow as exc:
        raise NonLevelZero(f"{x!r} is beyond float range") from exc


def _characteristic_at(model: FunctionModel, r: float) -> float:
    try:
        return characteristic(model, r)
    except (SingularNode, PoleOnCircle):
        return characteristic(model, r * (1 + 1e-9))


@functools.lru_cache(maxsize=1 << 16)
def _eval(scale: GrowthScale, x: TowerReal) -> TowerReal:
    if isinstance(scale, IteratedScale):
        t = t_pow(iter_log(x, scale.n), scale.a)
        return iter_exp(t_mul(TowerReal.of(scale.c), t), scale.m)
    if isinstance(scale, SinLogScale):
        lx = t_log(x)
        if not lx.is_plain:
            raise Overflow("log x exceeds float range, sin(log x) is undefined numerically")
        return t_exp(t_mul(x, TowerReal.of(2.0 + math.sin(to_float(lx)))))
    if isinstance(scale, DerivedMaxMod):
        try:
            return max_modulus(scale.model, x)
        except Overflow as exc:
            raise NonLevelZero(str(exc)) from exc
    if isinstance(scale, DerivedCharacteristic):
        return TowerReal.of(_characteristic_at(scale.model, _float_radius(x)))
    if isinstance(scale, TabulatedMonotone):
        r = _float_radius(x)
        if r <= scale.xs[-1]:
            return TowerReal.of(float(scale.interpolator()(r)))
        slope = (scale.ys[-1] - scale.ys[-2]) / (scale.xs[-1] - scale.xs[-2])
        return TowerReal.of(scale.ys[-1] + slope * (r - scale.xs[-1]))
    raise DomainError(f"unknown scale {scale!r}")


def scale_eval(scale: GrowthScale, x) -> TowerReal:
    x = TowerReal.of(x)
    if x < TowerReal.of(scale.x0):
        raise BelowDomain(f"{x!r} is below the scale threshold {scale.x0}")
    return _eval(scale, x)


def _closed_inverse(scale: IteratedScale, y: TowerReal) -> TowerReal:
    u = iter_log(y, scale.m)
    u = t_mul(u, TowerReal.of(1.0 / scale.c))
    return iter_exp(t_pow(u, 1.0 / scale.a), scale.n)


def _level_bounds(level: int, x0: float) -> tuple[float, float]:
    if level == 0:
        return x0, FLOAT_CEIL
    return math.log(FLOAT_CEIL), FLOAT_CEIL


class _NextLevel(Exception):
    pass


def _bisect_inverse(scale: GrowthScale, y: TowerReal) -> TowerReal:
    """Solve scale(x) = y with x = exp^[L](u), searching level by level."""
    if isinstance(scale, DerivedCharacteristic):
        lo, hi = _table_bracket(scale, y)
        return TowerReal.of(_float_root(scale, to_float(y), lo, hi))
    for level in range(MAX_LEVEL + 1):
        lo_bound, hi_bound = _level_bounds(level, scale.x0)

        def f(u, level=level):
            return scale_eval(scale, iter_exp(u, level))

        lo = lo_bound
        hi = max(2.0 * lo, lo + 1.0)
        try:
            while t_cmp(f(hi), y) < 0:
                lo, hi = hi, 2.0 * hi
                if hi > hi_bound:
                    raise _NextLevel
        except _NextLevel:
            continue
        while hi - lo > INVERSE_RTOL * hi:
            mid = 0.5 * (lo + hi)
            if t_cmp(f(mid), y) < 0:
                lo = mid
            else:
                hi = mid
        return iter_exp(0.5 * (lo + hi), level)
    raise Overflow("inverse beyond the supported tower levels")


def _float_root(scale: GrowthScale, y: float, lo: float, hi: float) -> float:
    """Root of scale(x) = y inside a bracket, for float-valued scales.

    Brent's method keeps the bracket, like bisection, but needs far fewer
    of the expensive quadrature-backed evaluations.
    """
    def g(x):
        return to_float(_eval(scale, TowerReal.of(x))) - y

    g_lo, g_hi = g(lo), g(hi)
    if g_lo >= 0.0:
        return lo
    if g_hi <= 0.0:
        return hi
    return optimize.brentq(g, lo, hi, xtol=1e-300, rtol=INVERSE_RTOL, maxiter=200)


def _table_bracket(scale: DerivedCharacteristic, y: TowerReal):
    with scale._lock:
        if "x" not in scale._table:
            ratio = (FLOAT_CEIL / scale.x0) ** (1.0 / (TABLE_POINTS - 1))
            xs, ys = [], []
            for i in range(TABLE_POINTS):
                x = scale.x0 * ratio**i
                try:
                    v = _characteristic_at(scale.model, x)
                except (SingularNode, Overflow, ValueError, ArithmeticError):
                    break
                if not math.isfinite(v):
                    break
                xs.append(x)
                ys.append(v)
            scale._table["x"] = np.array(xs)
            scale._table["y"] = np.array(ys)
    xs, ys = scale._table["x"], scale._table["y"]
    yv = to_float(y) if y.is_plain else math.inf
    i = int(np.searchsorted(ys, yv))
    if i == 0:
        return scale.x0, xs[0] if xs.size else scale.x0
    if i >= xs.size:
        raise NonLevelZero("characteristic inverse beyond the tabulated float range")
    return float(xs[i - 1]), float(xs[i])


@functools.lru_cache(maxsize=1 << 16)
def _inverse(scale: GrowthScale, y: TowerReal, force_bisection: bool) -> TowerReal:
    y0 = scale_eval(scale, scale.x0)
    if t_cmp(y, y0) < 0:
        raise BelowRange(f"{y!r} is below the scale range starting at {y0!r}")
    if isinstance(scale, IteratedScale) and not force_bisection:
        return _closed_inverse(scale, y)
    if t_cmp(y, y0) == 0:
        return TowerReal.of(scale.x0)
    return _bisect_inverse(scale, y)


def scale_inverse(scale: GrowthScale, y, force_bisection: bool = False) -> TowerReal:
    return _inverse(scale, TowerReal.of(y), force_bisection)


def composed(alpha: GrowthScale, beta: GrowthScale, r) -> TowerReal:
    """alpha^{-1}(beta(r))."""
    return scale_inverse(alpha, scale_eval(beta, r))


def composed_ratio(
    alpha: GrowthScale, beta: GrowthScale, r, p: int, q: int
) -> tuple[float, float]:
    """(log^[p] alpha^{-1} beta(r), log^[q] r) as floats."""
    num = to_float(iter_log(composed(alpha, beta, r), p))
    den = to_float(iter_log(TowerReal.of(r), q))
    return num, den
