import math

import numpy as np
import pytest

from relgrowth.errors import BadBracket
from relgrowth.indicators import GridSpec, window_size
from relgrowth.integralrep import (
    DELTA,
    LemmaBehavior,
    Verdict,
    classify,
    default_classify_grid,
    integrand_log,
    lemma_ratio,
    transition,
)
from relgrowth.scales import IteratedScale, SinLogScale, exp_scale
from relgrowth.tower import iter_exp

EXP = exp_scale()


def exp_family(c: float) -> IteratedScale:
    """beta with alpha^{-1} beta(r) = exp(c r), so F = exp(c r) at p = 2."""
    return IteratedScale(2, 0, 1.0, c)


def power_family(c: float) -> IteratedScale:
    """beta with alpha^{-1} beta(r) = r^c."""
    return IteratedScale(1, 0, c, 1.0)


def test_integrand_log_examples():
    assert integrand_log(EXP, exp_family(2), 2, 1, 1.0, 0.0, 10.0) == pytest.approx(10.0, abs=1e-9)
    r = math.exp(5)
    assert integrand_log(EXP, power_family(3), 2, 2, 1.0, 3.0, r) == pytest.approx(-5.0, abs=1e-9)
    for r in (2.0, 50.0, 300.0):
        assert integrand_log(EXP, exp_family(1), 2, 1, 1.0, 0.0, r) == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize(
    "beta, q, k, expected",
    [
        (exp_family(2), 1, 0.5, Verdict.DIVERGES),
        (exp_family(2), 1, 1.5, Verdict.CONVERGES),
        (power_family(3), 2, 3.5, Verdict.CONVERGES),
        (power_family(3), 2, 2.5, Verdict.DIVERGES),
        (power_family(3), 2, 3.0, Verdict.INDETERMINATE),
    ],
)
def test_classify_examples(beta, q, k, expected):
    assert classify(EXP, beta, 2, q, 1.0, k).verdict is expected


def test_superlinear_decay_gets_tail_bound():
    v = classify(EXP, exp_family(2), 2, 1, 1.0, 1.5)
    assert v.verdict is Verdict.CONVERGES
    assert v.tail_bound is not None
    assert 0 <= v.tail_bound < math.inf


def test_tail_bound_matches_closed_form():
    # integral of exp(-0.5 r) from r0 on is 2 exp(-0.5 r0)
    grid = GridSpec(1, 0.5, 0.05, 64)
    v = classify(EXP, exp_family(2), 2, 1, 1.0, 1.5, grid)
    start = grid.J - window_size(grid.J)
    r0 = math.exp(grid.t0 + start * grid.h)
    assert v.tail_bound == pytest.approx(2 * math.exp(-0.5 * r0), rel=1e-4)


def expected_verdict(k: float, k_star: float):
    if k < k_star - 0.1:
        return Verdict.DIVERGES
    if k > k_star + 0.1:
        return Verdict.CONVERGES
    return None


KS = np.round(np.arange(-3.0, 8.0 + 1e-9, 0.05), 10)


@pytest.mark.parametrize("c", [1, 2, 3])
def test_calculus_oracle_exponential(c):
    # integral of exp((c - k - 1) r) dr: critical exponent c - 1
    for k in KS:
        v = classify(EXP, exp_family(c), 2, 1, 1.0, float(k)).verdict
        want = expected_verdict(k, c - 1)
        assert want is None or v is want, (c, k, v)


@pytest.mark.parametrize("c", [1, 2, 3])
def test_calculus_oracle_power(c):
    # integral of r^(c - k - 1) dr: critical exponent c
    for k in KS:
        v = classify(EXP, power_family(c), 2, 2, 1.0, float(k)).verdict
        want = expected_verdict(k, c)
        assert want is None or v is want, (c, k, v)


def test_transition_examples():
    res = transition(EXP, exp_family(2), 2, 1, 1.0, (0.0, 3.0), 0.05)
    assert res.contains(1.0)
    res = transition(EXP, power_family(3), 2, 2, 1.0, (1.0, 6.0), 0.05)
    assert res.contains(3.0)
    assert res.width <= 2 * DELTA


@pytest.mark.parametrize("beta, q, k_range", [(exp_family(2), 1, (0.0, 3.0)), (power_family(3), 2, (1.0, 6.0))])
def test_transition_bracket_is_valid(beta, q, k_range):
    res = transition(EXP, beta, 2, q, 1.0, k_range, 0.05)
    verdicts = dict(res.verdict_table)
    assert res.k_lo < res.k_hi
    assert verdicts[res.k_lo].verdict is Verdict.DIVERGES
    assert verdicts[res.k_hi].verdict is Verdict.CONVERGES
    assert res.width <= 0.05 or res.limited or res.width <= 2 * DELTA + 1e-9


@pytest.mark.parametrize("beta, q", [(exp_family(2), 1), (power_family(3), 2), (power_family(1.5), 2)])
def test_verdicts_are_monotone_in_k(beta, q):
    order = {Verdict.DIVERGES: 0, Verdict.INDETERMINATE: 1, Verdict.CONVERGES: 2}
    ranks = [order[classify(EXP, beta, 2, q, 1.0, float(k)).verdict] for k in np.linspace(-1, 6, 71)]
    assert ranks == sorted(ranks)


def test_bad_bracket():
    with pytest.raises(BadBracket):
        transition(EXP, power_family(3), 2, 2, 1.0, (3.5, 6.0), 0.05)
    with pytest.raises(BadBracket):
        transition(EXP, power_family(3), 2, 2, 1.0, (4.0, 1.0), 0.05)


def test_sinlog_transition_contains_two():
    grid = GridSpec(1, 1.0, 0.0625, 1024)
    res = transition(EXP, SinLogScale(), 1, 1, 1.0, (0.0, 5.0), 0.05, grid)
    assert res.k_lo - 0.05 <= 2.0 <= res.k_hi + 0.05


@pytest.mark.parametrize(
    "beta, q, k, expected",
    [
        (power_family(3), 2, 3.5, LemmaBehavior.TENDS_TO_ZERO),
        (power_family(3), 2, 4.0, LemmaBehavior.TENDS_TO_ZERO),
        (exp_family(2), 1, 1.5, LemmaBehavior.UNBOUNDED),
        (exp_family(2), 1, 2.0, LemmaBehavior.BOUNDED_AWAY),
    ],
)
def test_lemma_ratio(beta, q, k, expected):
    assert lemma_ratio(EXP, beta, 2, q, 1.0, k) is expected


def test_lemma_ratio_oscillates_for_sinlog():
    # ln F - 2r = r sin(log r) swings with growing amplitude
    grid = GridSpec(1, 1.0, 0.0625, 256)
    assert lemma_ratio(EXP, SinLogScale(), 1, 1, 1.0, 2.0, grid) is LemmaBehavior.OSCILLATORY


def test_default_grid_reaches_large_radii():
    grid = default_classify_grid()
    assert grid.radii()[-1] > iter_exp(30.0, 1)
