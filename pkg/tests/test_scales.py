import math

import numpy as np
import pytest

from relgrowth.errors import BelowDomain, BelowRange, DomainError
from relgrowth.models import ExpPower, FactoredRational, Polynomial
from relgrowth.scales import (
    DerivedCharacteristic,
    DerivedMaxMod,
    IteratedScale,
    SinLogScale,
    TabulatedMonotone,
    composed_ratio,
    exp_scale,
    scale_eval,
    scale_inverse,
)
from relgrowth.tower import TowerReal, iter_log, t_cmp, to_float
from relgrowth.verify import standard_catalog

EXP_3X2 = IteratedScale(1, 0, 2.0, 3.0)


def log_value(x: TowerReal) -> float:
    return to_float(iter_log(x, 1))


def test_eval_examples():
    assert to_float(scale_eval(EXP_3X2, 2.0)) == pytest.approx(math.exp(12), rel=1e-14)
    x = math.exp(math.pi / 2)
    assert log_value(scale_eval(SinLogScale(), x)) == pytest.approx(3 * x, rel=1e-14)
    assert t_cmp(scale_eval(DerivedMaxMod(ExpPower(1, 2)), 20.0), TowerReal(1, 400.0)) == 0


def test_inverse_examples():
    assert to_float(scale_inverse(EXP_3X2, math.exp(12))) == pytest.approx(2.0, abs=1e-10)
    got = to_float(scale_inverse(DerivedCharacteristic(ExpPower(1, 1)), 5.0))
    assert got == pytest.approx(5 * math.pi, abs=1e-6)
    got = to_float(scale_inverse(DerivedMaxMod(Polynomial((0, 0, 0, 1))), 8.0))
    assert got == pytest.approx(2.0, abs=1e-8)


def test_composed_ratio_examples():
    num, den = composed_ratio(EXP_3X2, EXP_3X2, 100.0, 1, 1)
    assert num == pytest.approx(den, rel=1e-12)
    assert den == pytest.approx(math.log(100), rel=1e-15)
    num, den = composed_ratio(exp_scale(), EXP_3X2, math.exp(10), 1, 1)
    assert num == pytest.approx(math.log(3) + 20, rel=1e-12)
    assert den == pytest.approx(10.0, rel=1e-15)
    num, den = composed_ratio(exp_scale(), DerivedMaxMod(ExpPower(1, 2)), 1e3, 1, 1)
    assert num / den == pytest.approx(2.0, rel=1e-12)


def test_below_domain_and_range():
    with pytest.raises(BelowDomain):
        scale_eval(SinLogScale(), 1.0)
    with pytest.raises(BelowRange):
        scale_inverse(exp_scale(), 1.5)


def test_invalid_parameters():
    with pytest.raises(DomainError):
        IteratedScale(1, 0, -1.0, 1.0)
    with pytest.raises(DomainError):
        TabulatedMonotone((1, 2, 3), (1, 1, 2))


def catalog_scales():
    seen = {}
    for pair in standard_catalog():
        for s in (pair.alpha, pair.beta):
            seen.setdefault(repr(s), s)
    seen["tab"] = TabulatedMonotone((1, 2, 4, 8), (2, 5, 30, 400))
    return list(seen.values())


SCALES = catalog_scales()


def x_top(scale) -> float:
    if isinstance(scale, (DerivedMaxMod, DerivedCharacteristic)):
        return 40.0
    if isinstance(scale, TabulatedMonotone):
        return 8.0
    return 1e6


@pytest.mark.parametrize("scale", SCALES, ids=repr)
def test_strictly_increasing_on_grid(scale):
    xs = np.geomspace(scale.x0 * 1.01, x_top(scale), 128)
    ys = [scale_eval(scale, float(x)) for x in xs]
    assert all(t_cmp(b, a) > 0 for a, b in zip(ys, ys[1:]))


@pytest.mark.parametrize("scale", SCALES, ids=repr)
def test_inverse_roundtrip(scale):
    rng = np.random.default_rng(11)
    lo, hi = math.log(scale.x0 * 1.01), math.log(x_top(scale))
    for x in np.exp(rng.uniform(lo, hi, size=64)):
        back = to_float(scale_inverse(scale, scale_eval(scale, float(x))))
        assert back == pytest.approx(x, rel=1e-8)


@pytest.mark.parametrize(
    "scale",
    [EXP_3X2, exp_scale(), IteratedScale(1, 1, 3.0, 1.0), IteratedScale(2, 1, 1.0, 2.0), IteratedScale(2, 0, 0.5, 1.0)],
    ids=repr,
)
@pytest.mark.parametrize("x", [3.5, 10.0, 1e3, 1e8])
def test_closed_form_matches_bisection(scale, x):
    y = scale_eval(scale, x)
    closed = to_float(scale_inverse(scale, y))
    bisected = to_float(scale_inverse(scale, y, force_bisection=True))
    assert bisected == pytest.approx(closed, rel=1e-9)


def test_sinlog_increasing_on_dense_grid():
    xs = np.geomspace(math.e, 1e6, 1000)
    logs = [log_value(scale_eval(SinLogScale(), float(x))) for x in xs]
    assert np.all(np.diff(logs) > 0)


def test_tabulated_extrapolates_linearly():
    tab = TabulatedMonotone((1, 2), (2, 4))
    assert to_float(scale_eval(tab, 3.0)) == pytest.approx(6.0)


def test_characteristic_scale_of_rational():
    scale = DerivedCharacteristic(FactoredRational((), (1, 3), 1))
    y = scale_eval(scale, 10.0)
    assert to_float(scale_inverse(scale, y)) == pytest.approx(10.0, rel=1e-8)
