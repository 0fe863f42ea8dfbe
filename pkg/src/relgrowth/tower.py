"""Extended-range positive reals stored as towers of exponentials.

A :class:`TowerReal` ``(level, mantissa)`` stands for ``exp`` applied
``level`` times to ``mantissa``.  With level 0 it is an ordinary float.
Normalised form is unique:

* level 0 and ``|mantissa| <= B``, or
* level >= 1 and ``ln B < mantissa <= B``,

with ``B = 1e15``.  All logarithms are natural.

The point of the representation is that quantities such as ``exp(exp(r))``
at ``r = 1e4`` stay exactly manipulable: taking logs or exps of a high-level
value only shifts its level.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError, Overflow

B = 1e15
LN_B = math.log(B)
ABSORB = 1e-16
_EXP_MAX = math.log(1.7976931348623157e308)

Number = Union[int, float, "TowerReal"]


def _normalize(level: int, m: float) -> tuple[int, float]:
    if math.isnan(m):
        raise DomainError("NaN mantissa")
    if math.isinf(m):
        raise Overflow("infinite mantissa")
    if level < 0:
        raise DomainError(f"negative level {level}")
    while True:
        if level == 0:
            if m > B:
                level, m = 1, math.log(m)
                continue
            if m < -B:
                raise Overflow(f"{m!r} below -B has no tower form")
            return 0, m
        if m > B:
            level, m = level + 1, math.log(m)
        elif m <= LN_B:
            level, m = level - 1, math.exp(m)
        else:
            return level, m


@functools.total_ordering
@dataclass(frozen=True)
class TowerReal:
    level: int = 0
    mantissa: float = 0.0

    def __post_init__(self):
        level, m = _normalize(int(self.level), float(self.mantissa))
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "mantissa", m)

    @classmethod
    def of(cls, x: Number) -> "TowerReal":
        if isinstance(x, TowerReal):
            return x
        return cls(0, float(x))

    def normalized(self) -> "TowerReal":
        return TowerReal(self.level, self.mantissa)

    @property
    def is_plain(self) -> bool:
        """True when the value fits a float (level 0, or level 1 below e^709)."""
        return self.level == 0 or (self.level == 1 and self.mantissa <= _EXP_MAX)

    def __lt__(self, other):
        if not isinstance(other, TowerReal):
            other = TowerReal.of(other)
        return t_cmp(self, other) < 0

    def __mul__(self, other):
        return t_mul(self, TowerReal.of(other))

    __rmul__ = __mul__

    def __add__(self, other):
        return t_add(self, TowerReal.of(other))

    __radd__ = __add__

    def __float__(self):
        return to_float(self)

    def __repr__(self):
        if self.level == 0:
            return f"TowerReal({self.mantissa!r})"
        return f"TowerReal(level={self.level}, mantissa={self.mantissa!r})"


def t_cmp(x: TowerReal, y: TowerReal) -> int:
    """Three-way comparison: -1, 0 or 1."""
    if x.level != y.level:
        return -1 if x.level < y.level else 1
    if x.mantissa == y.mantissa:
        return 0
    return -1 if x.mantissa < y.mantissa else 1


def to_float(x: TowerReal) -> float:
    if x.level == 0:
        return x.mantissa
    if x.level == 1 and x.mantissa <= _EXP_MAX:
        return math.exp(x.mantissa)
    raise Overflow(f"{x!r} exceeds float range")


def t_log(x: TowerReal) -> TowerReal:
    """Single natural log; may return a negative level-0 value."""
    if x.level >= 1:
        return TowerReal(x.level - 1, x.mantissa)
    if x.mantissa <= 0.0:
        raise DomainError(f"log of non-positive value {x.mantissa!r}")
    return TowerReal(0, math.log(x.mantissa))


def t_exp(x: TowerReal) -> TowerReal:
    if x.level >= 1:
        return TowerReal(x.level + 1, x.mantissa)
    if x.mantissa > LN_B:
        return TowerReal(1, x.mantissa)
    return TowerReal(0, math.exp(x.mantissa))


def iter_log(x: Number, k: int) -> TowerReal:
    """k-fold natural logarithm; every intermediate must stay positive.

    ``k < 0`` is read as ``iter_exp(x, -k)`` (so ``log^[-1] = exp``).
    """
    x = TowerReal.of(x)
    if k < 0:
        return iter_exp(x, -k)
    for _ in range(k):
        x = t_log(x)
        if x.level == 0 and x.mantissa <= 0.0:
            raise DomainError("iterated log left the positive reals")
    return x


def iter_exp(x: Number, k: int) -> TowerReal:
    x = TowerReal.of(x)
    if k < 0:
        return iter_log(x, -k)
    for _ in range(k):
        x = t_exp(x)
    return x


def _log_gap(s: TowerReal, big: TowerReal) -> float:
    """log(s) - log(big) for 0 < s <= big, as a float (possibly -inf)."""
    ls, lb = t_log(s), t_log(big)
    if ls.level == 0 and lb.level == 0:
        return ls.mantissa - lb.mantissa
    if lb.level == 1 and ls.level == 0:
        if lb.mantissa > _EXP_MAX:
            return -math.inf
        return ls.mantissa - math.exp(lb.mantissa)
    if lb.level == 1 and ls.level == 1:
        if ls.mantissa == lb.mantissa:
            return 0.0
        log_mag = lb.mantissa + math.log(-math.expm1(ls.mantissa - lb.mantissa))
        return -math.inf if log_mag > _EXP_MAX else -math.exp(log_mag)
    return 0.0 if ls == lb else -math.inf


def t_add(x: TowerReal, y: TowerReal) -> TowerReal:
    """Sum; a summand below ABSORB relative to the other is absorbed."""
    if x.level == 0 and y.level == 0:
        return TowerReal(0, x.mantissa + y.mantissa)
    big, small = (x, y) if t_cmp(x, y) >= 0 else (y, x)
    if small.level == 0:
        if small.mantissa == 0.0:
            return big
        ratio = small.mantissa * math.exp(-big.mantissa) if big.level == 1 else 0.0
    else:
        ratio = math.exp(_log_gap(small, big))
    if abs(ratio) < ABSORB:
        return big
    return t_exp(t_add(t_log(big), TowerReal(0, math.log1p(ratio))))


def _scale(y: TowerReal, a: float) -> TowerReal:
    """y * a for a real factor a."""
    if y.level == 0:
        prod = y.mantissa * a
        if math.isfinite(prod):
            return TowerReal(0, prod)
    if a == 0.0:
        return TowerReal(0, 0.0)
    if a < 0.0:
        raise Overflow("negative multiple of a tower value")
    if y.level == 0 and y.mantissa <= 0.0:
        raise DomainError("log-path scaling needs a positive operand")
    return t_exp(t_add(t_log(y), TowerReal(0, math.log(a))))


def t_mul(x: TowerReal, y: TowerReal) -> TowerReal:
    """Product via log-domain addition one level down."""
    if x.level == 0 and y.level == 0:
        prod = x.mantissa * y.mantissa
        if math.isfinite(prod):
            return TowerReal(0, prod)
    if x.level == 0 and x.mantissa == 0.0 or y.level == 0 and y.mantissa == 0.0:
        return TowerReal(0, 0.0)
    for v in (x, y):
        if v.level == 0 and v.mantissa < 0.0:
            raise DomainError("t_mul of a negative value with a tower value")
    return t_exp(t_add(t_log(x), t_log(y)))


def t_pow(x: Number, a: float) -> TowerReal:
    """x**a computed as exp(a * log x)."""
    x = TowerReal.of(x)
    if x.level == 0 and x.mantissa <= 0.0:
        raise DomainError("t_pow needs a positive base")
    if not math.isfinite(a):
        raise DomainError("t_pow needs a finite exponent")
    if a == 0.0:
        return TowerReal(0, 1.0)
    if a == 1.0:
        return x
    if x.level == 0:
        try:
            direct = x.mantissa**a
        except OverflowError:
            direct = math.inf
        if math.isfinite(direct) and direct > 0.0:
            return TowerReal(0, direct)
    lx = t_log(x)
    if a < 0.0 and lx.level >= 1:
        return TowerReal(0, 0.0)  # underflows every float
    if lx.level == 0:
        return t_exp(TowerReal(0, lx.mantissa * a))
    return t_exp(_scale(lx, a))


def t_ratio(x: Number, y: Number) -> float:
    """x / y as a float, for positive operands of any level."""
    x, y = TowerReal.of(x), TowerReal.of(y)
    if x.level == 0 and y.level == 0:
        return x.mantissa / y.mantissa
    if t_cmp(x, y) <= 0:
        return math.exp(_log_gap(x, y))
    d = -_log_gap(y, x)
    if d > _EXP_MAX:
        raise Overflow("ratio exceeds float range")
    return math.exp(d)


def log_float(x: Number, k: int = 1) -> float:
    """k-fold log reduced to a float."""
    return to_float(iter_log(x, k))
