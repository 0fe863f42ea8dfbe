
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relgrowth.errors import DegenerateGrid
from relgrowth.indicators import (
    GridSpec,
    default_order_grid,
    default_type_grid,
    rel_order,
    rel_type,
    rel_type_inverse_form,
    rel_weak_type,
    summarize,
)
from relgrowth.models import ExpPower
from relgrowth.scales import DerivedMaxMod, IteratedScale, SinLogScale, exp_scale
from relgrowth.verify import standard_catalog

EXP = exp_scale()
EXP_3X2 = IteratedScale(1, 0, 2.0, 3.0)
SINLOG = SinLogScale()
CATALOG = {pair.name: pair for pair in standard_catalog()}
ITERATED_PAIRS = [
    name
    for name, pair in CATALOG.items()
    if isinstance(pair.alpha, IteratedScale) and isinstance(pair.beta, IteratedScale)
]


def test_grid_radii_increase():
    grid = GridSpec(2, 1.0, 0.5, 20)
    radii = grid.radii()
    assert all(b > a for a, b in zip(radii, radii[1:]))
    assert grid.params()[0] == 1.0


def test_regular_pair_order_and_type():
    rho, lam = rel_order(EXP, EXP_3X2, 1, 1)
    assert rho.value == pytest.approx(2.0, abs=1e-3)
    assert lam.value == pytest.approx(2.0, abs=1e-3)
    sigma, sigma_bar = rel_type(EXP, EXP_3X2, 1, 1, 2.0)
    tau, tau_bar = rel_weak_type(EXP, EXP_3X2, 1, 1, 2.0)
    for est in (sigma, sigma_bar, tau, tau_bar):
        assert est.value == pytest.approx(3.0, abs=1e-6)


@pytest.mark.parametrize("p, q", [(1, 1), (2, 2), (3, 3)])
def test_identity_pair_is_one(p, q):
    rho, lam = rel_order(EXP_3X2, EXP_3X2, p, q)
    assert rho.value == pytest.approx(1.0, abs=1e-12)
    assert lam.value == pytest.approx(1.0, abs=1e-12)


def test_sinlog_pair():
    rho, lam = rel_order(EXP, SINLOG, 1, 1)
    assert rho.value == pytest.approx(1.0, abs=1e-2)
    assert lam.value == pytest.approx(1.0, abs=1e-2)
    sigma, sigma_bar = rel_type(EXP, SINLOG, 1, 1, 1.0)
    assert sigma.value == pytest.approx(3.0, abs=5e-2)
    assert sigma_bar.value == pytest.approx(1.0, abs=5e-2)
    tau, tau_bar = rel_weak_type(EXP, SINLOG, 1, 1, 1.0)
    assert tau.value == pytest.approx(1.0, abs=5e-2)
    assert tau_bar.value == pytest.approx(3.0, abs=5e-2)


def test_derived_max_modulus_pair():
    beta = DerivedMaxMod(ExpPower(1, 2))
    rho, _ = rel_order(EXP, beta, 1, 1)
    assert rho.value == pytest.approx(2.0, abs=1e-6)
    sigma, _ = rel_type(EXP, beta, 1, 1, 2.0)
    assert sigma.value == pytest.approx(1.0, abs=1e-2)


def test_power_pair_at_level_two():
    beta = IteratedScale(1, 0, 2.0, 1.0)
    sigma, _ = rel_type(EXP, beta, 2, 2, 1.0)
    assert sigma.value == pytest.approx(2.0, abs=1e-2)


def test_inverse_form_examples():
    assert rel_type_inverse_form(EXP, EXP_3X2, 1, 1, 2.0, "limsup").value == pytest.approx(3.0, abs=1e-3)
    for kind in ("limsup", "liminf"):
        assert rel_type_inverse_form(EXP_3X2, EXP_3X2, 1, 1, 1.0, kind).value == pytest.approx(1.0, abs=1e-12)
    assert rel_type_inverse_form(EXP, SINLOG, 1, 1, 1.0, "limsup").value == pytest.approx(3.0, abs=5e-2)


def test_inverse_form_rejects_unknown_kind():
    with pytest.raises(ValueError):
        rel_type_inverse_form(EXP, EXP_3X2, 1, 1, 2.0, "mean")


def test_too_few_points():
    with pytest.raises(DegenerateGrid):
        rel_order(EXP, EXP_3X2, 1, 1, GridSpec(2, 2.0, 0.5, 8))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_limsup_not_below_liminf(name):
    pair = CATALOG[name]
    rho, lam = rel_order(pair.alpha, pair.beta, pair.p, pair.q, pair.grids()[0])
    assert rho.value >= lam.value
    gt = pair.ground_truth
    type_grid = pair.grids()[1]
    sigma, sigma_bar = rel_type(pair.alpha, pair.beta, pair.p, pair.q, gt.rho, type_grid)
    tau, tau_bar = rel_weak_type(pair.alpha, pair.beta, pair.p, pair.q, gt.lam, type_grid)
    assert sigma.value >= sigma_bar.value
    assert tau_bar.value >= tau.value


@pytest.mark.parametrize("name", ["exp-sq", "sinlog", "poly-power"])
def test_type_and_weak_type_share_sequences(name):
    pair = CATALOG[name]
    rho = pair.ground_truth.rho
    sigma, sigma_bar = rel_type(pair.alpha, pair.beta, pair.p, pair.q, rho)
    tau, tau_bar = rel_weak_type(pair.alpha, pair.beta, pair.p, pair.q, rho)
    assert tau_bar.tail_values == sigma.tail_values
    assert tau.tail_values == sigma_bar.tail_values


@pytest.mark.parametrize("name", ITERATED_PAIRS)
def test_reparametrization_agrees(name):
    pair = CATALOG[name]
    rho = pair.ground_truth.rho
    sigma, sigma_bar = rel_type(pair.alpha, pair.beta, pair.p, pair.q, rho)
    grid = pair.grids()[2]
    up = rel_type_inverse_form(pair.alpha, pair.beta, pair.p, pair.q, rho, "limsup", grid)
    down = rel_type_inverse_form(pair.alpha, pair.beta, pair.p, pair.q, rho, "liminf", grid)
    assert up.value == pytest.approx(sigma.value, abs=1e-2)
    assert down.value == pytest.approx(sigma_bar.value, abs=1e-2)


def refined(grid: GridSpec) -> GridSpec:
    return GridSpec(grid.q_anchor, grid.t0, grid.h / 2, 2 * grid.J - 1)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_grid_refinement_is_stable(name):
    pair = CATALOG[name]
    tol = 5e-2 if name == "sinlog" else 1e-3
    order_grid = pair.grids()[0]
    coarse, _ = rel_order(pair.alpha, pair.beta, pair.p, pair.q, order_grid)
    fine, _ = rel_order(pair.alpha, pair.beta, pair.p, pair.q, refined(order_grid))
    assert fine.value == pytest.approx(coarse.value, abs=tol)
    type_grid = pair.grids()[1]
    rho = pair.ground_truth.rho
    coarse, _ = rel_type(pair.alpha, pair.beta, pair.p, pair.q, rho, type_grid)
    fine, _ = rel_type(pair.alpha, pair.beta, pair.p, pair.q, rho, refined(type_grid))
    assert fine.value == pytest.approx(coarse.value, abs=tol)


def test_default_grids_use_more_points_for_sinlog():
    assert default_order_grid(1, EXP, SINLOG).J == 256
    assert default_type_grid(1, EXP, EXP_3X2).J == 64


@settings(max_examples=60)
@given(st.lists(st.floats(-1e6, 1e6), min_size=16, max_size=80))
def test_summary_envelope_properties(values):
    ts = np.arange(len(values), dtype=float) + 1.0
    hi = summarize("sigma", values, ts)
    lo = summarize("sigma_bar", values, ts)
    assert hi.value >= lo.value
    assert hi.spread >= 0
    assert hi.value == max(hi.tail_values)
    assert lo.value == min(lo.tail_values)


@settings(max_examples=60)
@given(st.floats(-5, 5), st.floats(0.1, 10), st.integers(16, 80))
def test_monotone_tail_estimate_inside_range(c, a, n):
    ts = np.arange(n, dtype=float) + 2.0
    ratios = c + a / ts
    est = summarize("rho", ratios, ts)
    tail = est.tail_values
    assert abs(est.value - tail[-1]) <= abs(tail[0] - tail[-1]) + 1e-15
