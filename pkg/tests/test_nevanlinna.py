import math

import numpy as np
import pytest

from relgrowth.errors import SingularNode
from relgrowth.models import ExpPower, FactoredRational, Polynomial, Product, Sum, max_modulus
from relgrowth.nevanlinna import breakdown, characteristic, counting, proximity
from relgrowth.tower import iter_log, to_float

Z = Polynomial((0, 1))
INV_Z = FactoredRational((), (0,), 1)
TWO_POLES = FactoredRational((), (1, 3), 1)


@pytest.mark.parametrize("r", [1.0, math.pi, 10.0])
def test_proximity_of_exp(r):
    assert proximity(ExpPower(1, 1), r) == pytest.approx(r / math.pi, abs=1e-8)


@pytest.mark.parametrize("r, expected", [(math.e, 1.0), (0.5, 0.0)])
def test_proximity_of_z(r, expected):
    assert proximity(Z, r) == pytest.approx(expected, abs=1e-10)


def test_counting_examples():
    assert counting(ExpPower(1, 2), 5.0) == 0.0
    assert counting(INV_Z, math.e) == pytest.approx(1.0, abs=1e-12)
    assert counting(TWO_POLES, 6.0) == pytest.approx(math.log(6) + math.log(2), abs=1e-12)


def test_characteristic_examples():
    assert characteristic(ExpPower(1, 1), math.pi) == pytest.approx(1.0, abs=1e-8)
    assert characteristic(INV_Z, math.e) == pytest.approx(1.0, abs=1e-10)
    assert characteristic(Z, math.e**2) == pytest.approx(2.0, abs=1e-10)


def test_proximity_to_finite_value():
    # 1/|z - 0| on |z| = 1/e has log+ identically 1
    assert proximity(Z, 1 / math.e, 0) == pytest.approx(1.0, abs=1e-10)


def test_contour_through_zero_is_singular():
    with pytest.raises(SingularNode):
        proximity(Z, 1.0, 1.0)


def test_breakdown_sums():
    b = breakdown(TWO_POLES, 6.0)
    assert b.characteristic == pytest.approx(b.proximity + b.counting, abs=1e-15)
    assert b.characteristic == pytest.approx(characteristic(TWO_POLES, 6.0), abs=1e-12)


@pytest.mark.parametrize("r", np.geomspace(0.05, 1e4, 20))
def test_identity_polynomial_is_exact(r):
    assert characteristic(Z, r) == pytest.approx(max(math.log(r), 0.0), abs=1e-10)
    assert counting(Z, r, 0) == pytest.approx(math.log(r) if r > 0 else 0.0, abs=1e-12)


ENTIRE = [ExpPower(1, 1), ExpPower(1, 2), Sum(ExpPower(1, 1), Z), Polynomial((3, 1, 0, 1))]


@pytest.mark.parametrize("model", ENTIRE)
@pytest.mark.parametrize("r", [0.5, 1.5, 3.0])
def test_characteristic_between_log_max_bounds(model, r):
    # T(r) <= log+ M(r) <= 3 T(2r) for entire functions
    t = characteristic(model, r)
    log_m = max(to_float(iter_log(max_modulus(model, r), 1)), 0.0)
    assert t <= log_m + 1e-9
    assert log_m <= 3 * characteristic(model, 2 * r) + 1e-9


@pytest.mark.parametrize("model", ENTIRE + [TWO_POLES, Product(Z, TWO_POLES)])
def test_characteristic_is_increasing(model):
    radii = [0.2, 0.6, 1.2, 2.0, 2.5, 3.5, 5.0, 7.0]
    ts = [characteristic(model, r) for r in radii]
    assert all(b >= a - 1e-10 for a, b in zip(ts, ts[1:]))


@pytest.mark.parametrize("r", [1.5, 3.5, 7.0])
def test_distinct_counting_never_exceeds_multiplicity(r):
    model = FactoredRational((0.5, 0.5, 2), (1, 1, 1, 3), 1)
    for a in (0, math.inf):
        assert counting(model, r, a, distinct=True) <= counting(model, r, a) + 1e-15
