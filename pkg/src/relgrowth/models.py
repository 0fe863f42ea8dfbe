"""Symbolic entire and meromorphic function models.

Six variants cover the catalog: polynomials, ``exp(c z^n)``, iterated
exponentials, factored rationals, and sums/products of those.  Every model
can be evaluated pointwise, evaluated in the log domain on arrays (which is
what keeps ``exp(z^2)`` on a circle of radius ``1e7`` tractable), asked for
its maximum modulus, and asked how many a-points it has in a closed disk.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    DomainError,
    ModelError,
    NonIntegralWinding,
    OnCircle,
    Overflow,
    PoleError,
    PoleOnCircle,
)
from .tower import TowerReal, iter_exp, t_exp, t_mul, t_pow, to_float

TWO_PI = 2.0 * math.pi
MAXMOD_NODES = 4096
POLE_EPS = 1e-14
CIRCLE_EPS = 1e-12
WINDING_START = 256
WINDING_CAP = 2**20


@dataclass(frozen=True)
class Polynomial:
    """Coefficients in ascending degree."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = [complex(c) for c in self.coefficients] or [0j]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class ExpPower:
    """exp(c * z**n)."""

    c: float
    n: int

    def __post_init__(self):
        if not self.c > 0:
            raise ModelError("ExpPower needs c > 0")
        if int(self.n) != self.n or self.n < 1:
            raise ModelError("ExpPower needs a positive integer n")
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True)
class ExpTower:
    """exp^[k](z)."""

    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ModelError("ExpTower needs a positive integer k")
        object.__setattr__(self, "k", int(self.k))


@dataclass(frozen=True)
class FactoredRational:
    """scale * prod(z - zeros) / prod(z - poles); lists are multisets."""

    zeros: tuple = ()
    poles: tuple = ()
    scale: complex = 1.0

    def __post_init__(self):
        zeros = tuple(complex(z) for z in self.zeros)
        poles = tuple(complex(p) for p in self.poles)
        if set(zeros) & set(poles):
            raise ModelError("zero and pole lists must be disjoint")
        if complex(self.scale) == 0:
            raise ModelError("scale must be non-zero")
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "scale", complex(self.scale))


@dataclass(frozen=True)
class Sum:
    left: "FunctionModel"
    right: "FunctionModel"


@dataclass(frozen=True)
class Product:
    left: "FunctionModel"
    right: "FunctionModel"


FunctionModel = Union[Polynomial, ExpPower, ExpTower, FactoredRational, Sum, Product]


def _is_inf(a) -> bool:
    return a is None or cmath.isinf(complex(a))


def pole_candidates(model: FunctionModel) -> tuple:
    """Distinct locations where the model may have a pole."""
    if isinstance(model, FactoredRational):
        return tuple(dict.fromkeys(model.poles))
    if isinstance(model, (Sum, Product)):
        return tuple(dict.fromkeys(pole_candidates(model.left) + pole_candidates(model.right)))
    return ()


def is_entire(model: FunctionModel) -> bool:
    return not pole_candidates(model)


def evaluate(model: FunctionModel, z: complex) -> complex:
    """Pointwise value f(z)."""
    z = complex(z)
    try:
        if isinstance(model, Polynomial):
            acc = 0j
            for c in reversed(model.coefficients):
                acc = acc * z + c
            return acc
        if isinstance(model, ExpPower):
            return cmath.exp(model.c * z**model.n)
        if isinstance(model, ExpTower):
            w = z
            for _ in range(model.k):
                w = cmath.exp(w)
            return w
        if isinstance(model, FactoredRational):
            for p in model.poles:
                if abs(z - p) < POLE_EPS:
                    raise PoleError(f"{z} is a pole")
            num = model.scale
            for zz in model.zeros:
                num *= z - zz
            for p in model.poles:
                num /= z - p
            return num
        if isinstance(model, Sum):
            return evaluate(model.left, z) + evaluate(model.right, z)
        if isinstance(model, Product):
            return evaluate(model.left, z) * evaluate(model.right, z)
    except OverflowError as exc:
        if isinstance(exc, Overflow):
            raise
        raise Overflow(f"f({z}) overflows") from exc
    raise ModelError(f"unknown model {model!r}")


def log_values(model: FunctionModel, z) -> np.ndarray:
    """Complex log of f on an array of points (real part = log|f|).

    The imaginary part is only meaningful modulo 2*pi.
    """
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if isinstance(model, Polynomial):
            return np.log(np.polyval(model.coefficients[::-1], z))
        if isinstance(model, ExpPower):
            return model.c * z**model.n
        if isinstance(model, ExpTower):
            w = z
            for _ in range(model.k - 1):
                w = np.exp(w)
            return w
        if isinstance(model, FactoredRational):
            out = np.full(z.shape, cmath.log(model.scale), dtype=complex)
            for zz in model.zeros:
                out += np.log(z - zz)
            for p in model.poles:
                out -= np.log(z - p)
            return out
        if isinstance(model, Product):
            return log_values(model.left, z) + log_values(model.right, z)
        if isinstance(model, Sum):
            lf = log_values(model.left, z)
            lg = log_values(model.right, z)
            swap = lg.real > lf.real
            hi = np.where(swap, lg, lf)
            lo = np.where(swap, lf, lg)
            out = hi + np.log1p(np.exp(lo - hi))
            return np.where(np.isneginf(hi.real), hi, out)
    raise ModelError(f"unknown model {model!r}")


def log_abs(model: FunctionModel, z) -> np.ndarray:
    return log_values(model, z).real


def _shifted(model: FunctionModel, a: complex) -> FunctionModel:
    a = complex(a)
    if a == 0:
        return model
    if isinstance(model, Polynomial):
        # exact coefficient shift keeps contour zeros visible as log 0
        return Polynomial((model.coefficients[0] - a,) + model.coefficients[1:])
    return Sum(model, Polynomial((-a,)))


def _check_poles_off_circle(model: FunctionModel, r: float) -> None:
    for p in pole_candidates(model):
        if abs(abs(p) - r) <= CIRCLE_EPS * max(1.0, r):
            raise PoleOnCircle(f"pole {p} lies on |z| = {r}")


def _golden_max(fun, lo: float, hi: float, tol: float) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = fun(c), fun(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = fun(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = fun(d)
    x = 0.5 * (lo + hi)
    return x, max(fun(x), fc, fd)


def max_modulus(model: FunctionModel, r, force_sampling: bool = False) -> TowerReal:
    """M_f(r) = max over |z| = r of |f(z)|.

    ExpPower and ExpTower use the closed forms (valid for tower radii); all
    other models sample the circle and refine the best node by golden-section
    search on log|f|.
    """
    rt = TowerReal.of(r)
    if rt.level == 0 and rt.mantissa <= 0:
        raise DomainError("radius must be positive")
    if not force_sampling:
        if isinstance(model, ExpPower):
            return t_exp(t_mul(TowerReal.of(model.c), t_pow(rt, model.n)))
        if isinstance(model, ExpTower):
            return iter_exp(rt, model.k)
    r = to_float(rt)
    _check_poles_off_circle(model, r)

    def g(theta):
        return float(log_abs(model, r * np.exp(1j * np.array([theta])))[0])

    theta = np.arange(MAXMOD_NODES) * (TWO_PI / MAXMOD_NODES)
    vals = log_abs(model, r * np.exp(1j * theta))
    i = int(np.nanargmax(vals))
    step = TWO_PI / MAXMOD_NODES
    _, best = _golden_max(g, theta[i] - step, theta[i] + step, 1e-10 * TWO_PI)
    best = max(best, float(vals[i]))
    if not math.isfinite(best):
        raise Overflow(f"log M(r) is not finite at r = {r}")
    return t_exp(TowerReal.of(best))


# --- a-point enumeration -------------------------------------------------


def _cluster(roots) -> list[tuple[complex, int]]:
    remaining = sorted((complex(z) for z in roots), key=lambda z: (z.real, z.imag))
    groups: list[list[complex]] = []
    for z in remaining:
        for grp in groups:
            if abs(grp[0] - z) <= 1e-6 * max(1.0, abs(z)):
                grp.append(z)
                break
        else:
            groups.append([z])
    return [(complex(np.mean(g)), len(g)) for g in groups]


def _poly_roots(coeffs_ascending) -> list[tuple[complex, int]]:
    poly = Polynomial(coeffs_ascending)
    if poly.degree == 0:
        if poly.coefficients[0] == 0:
            raise DomainError("identically zero: every point is an a-point")
        return []
    return _cluster(np.roots(poly.coefficients[::-1]))


def _exp_power_points(model: ExpPower, r: float, a: complex) -> list[tuple[complex, int]]:
    if a == 0:
        return []
    bound = model.c * r**model.n
    log_a = cmath.log(a)
    m_max = int((bound + abs(log_a)) / TWO_PI) + 1
    if m_max > 10**6:
        raise ModelError("too many a-points to enumerate")
    pts = []
    for m in range(-m_max, m_max + 1):
        w = log_a + 2j * math.pi * m
        if abs(w) > bound * (1 + 1e-12):
            continue
        if w == 0:
            pts.append((0j, model.n))
            continue
        base = (w / model.c) ** (1.0 / model.n)
        for j in range(model.n):
            pts.append((base * cmath.exp(2j * math.pi * j / model.n), 1))
    return pts


def a_points(model: FunctionModel, r: float, a=math.inf) -> list[tuple[complex, int]]:
    """a-points (poles for a = inf) in |z| <= r as (location, multiplicity).

    Exact enumeration; raises ModelError for models where that is not
    available (finite a on ExpTower or composite models).
    """
    r = float(r)
    if _is_inf(a):
        if isinstance(model, FactoredRational):
            pts = list(Counter(model.poles).items())
        elif isinstance(model, (Sum, Product)):
            pts = _composite_poles(model)
        else:
            pts = []
    else:
        a = complex(a)
        if isinstance(model, Polynomial):
            coeffs = list(model.coefficients)
            coeffs[0] -= a
            pts = _poly_roots(coeffs)
        elif isinstance(model, FactoredRational):
            if a == 0:
                pts = list(Counter(model.zeros).items())
            else:
                num = np.poly(model.zeros) * model.scale if model.zeros else np.array([model.scale])
                den = np.poly(model.poles) * a if model.poles else np.array([a])
                pts = _poly_roots(np.polysub(num, den)[::-1])
        elif isinstance(model, ExpPower):
            pts = _exp_power_points(model, r, a)
        else:
            raise ModelError(f"no exact a-point enumeration for {type(model).__name__}")
    inside = []
    for z, mult in pts:
        if abs(abs(z) - r) < CIRCLE_EPS * max(1.0, r):
            raise OnCircle(f"a-point {z} lies on |z| = {r}")
        if abs(z) <= r:
            inside.append((z, mult))
    return inside


def _composite_poles(model: FunctionModel) -> list[tuple[complex, int]]:
    cands = pole_candidates(model)
    out = []
    for i, p in enumerate(cands):
        gaps = [abs(p - q) for j, q in enumerate(cands) if j != i]
        eps = min([1e-3] + [0.25 * g for g in gaps])
        order = -winding_number(model, eps, center=p)
        if order > 0:
            out.append((p, order))
    return out


def winding_number(model: FunctionModel, r: float, a: complex = 0, center: complex = 0) -> int:
    """Winding number of f - a around 0 along |z - center| = r.

    Nodes are refined adaptively until consecutive argument increments are
    below pi/2; the total must be integral within 1e-6.
    """
    g = _shifted(model, a)
    theta = np.linspace(0.0, TWO_PI, WINDING_START + 1)
    while True:
        L = log_values(g, center + r * np.exp(1j * theta))
        if np.any(~np.isfinite(L.real)) or np.any(L.real < math.log(CIRCLE_EPS)):
            raise OnCircle("an a-point sits on the contour")
        d = np.diff(L.imag)
        d = (d + math.pi) % TWO_PI - math.pi
        bad = np.abs(d) >= math.pi / 2
        if not bad.any():
            total = d.sum() / TWO_PI
            n = round(total)
            if abs(total - n) > 1e-6:
                raise NonIntegralWinding(f"winding {total} is not integral")
            return int(n)
        if theta.size + bad.sum() > WINDING_CAP:
            raise NonIntegralWinding("argument tracking hit the node cap")
        mids = 0.5 * (theta[:-1][bad] + theta[1:][bad])
        theta = np.sort(np.concatenate([theta, mids]))


def count_in_disk(
    model: FunctionModel,
    r: float,
    a=math.inf,
    distinct: bool = False,
    method: str = "auto",
) -> int:
    """n_f(r, a): number of a-points in |z| <= r.

    ``method="auto"`` enumerates exactly for polynomials, factored rationals
    and poles, and uses the argument principle otherwise.  ``"winding"``
    forces the argument principle (poles/zeros still enumerated exactly when
    needed to convert a winding number into a count).
    """
    r = float(r)
    if r <= 0:
        raise DomainError("radius must be positive")
    exact = _is_inf(a) or isinstance(model, (Polynomial, FactoredRational))
    if method == "auto" and exact:
        pts = a_points(model, r, a)
        return len(pts) if distinct else sum(m for _, m in pts)
    if method not in ("auto", "winding"):
        raise ValueError(f"unknown method {method!r}")
    if distinct:
        raise ModelError("distinct counting needs exact enumeration")
    if _is_inf(a):
        w = winding_number(model, r, 0)
        zeros = sum(m for _, m in a_points(model, r, 0))
        return zeros - w
    w = winding_number(model, r, a)
    poles = sum(m for _, m in a_points(model, r, math.inf))
    return w + poles
