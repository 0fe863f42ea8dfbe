"""Recompute the frozen reference values from scratch."""

import math

import pytest

import oracles


def test_exp_exp_e():
    assert oracles.derive_exp_exp_e() == pytest.approx(oracles.EXP_EXP_E, rel=1e-15)


def test_exp_plus_z_max():
    value, arg = oracles.derive_exp_plus_z_max()
    assert value == pytest.approx(oracles.EXP_PLUS_Z_MAX, rel=1e-12)
    assert arg == pytest.approx(oracles.EXP_PLUS_Z_ARGMAX, abs=1e-5)


def test_log_two():
    assert oracles.LOG_TWO == math.log(2.0)


@pytest.mark.parametrize("k", sorted(oracles.SINLOG_PEAK_LOGS))
def test_sinlog_peak_logs(k):
    got = oracles.derive_sinlog_peak_logs(k)
    assert got == pytest.approx(oracles.SINLOG_PEAK_LOGS[k], rel=1e-9)


def test_sinlog_peaks_grow_below_two_and_shrink_above():
    below, above = oracles.SINLOG_PEAK_LOGS[1.9], oracles.SINLOG_PEAK_LOGS[2.1]
    assert all(b > a for a, b in zip(below, below[1:]))
    assert all(b < a for a, b in zip(above, above[1:]))
