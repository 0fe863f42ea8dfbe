"""Frozen reference values and the independent routines that produced them.

The constants are what the tests compare against; ``test_oracles.py``
recomputes them with mpmath / brute force so a drift in either is caught.
"""

import math

import mpmath
import numpy as np

# exp(exp(e)) at 40 significant digits
EXP_EXP_E = 3814279.1047602206

# max over |z| = 1 of |e^z + z| from 10**6 equispaced samples; attained at angle 0
EXP_PLUS_Z_MAX = 3.718281828459045
EXP_PLUS_Z_ARGMAX = 0.0

# the unique solution of e^z = 2 in the unit disk
LOG_TWO = 0.6931471805599453

# ln of the integral of exp(r (1 + sin log r - k)) over the n-th peak window
# log r in [pi/2 + 2 pi n - 1, pi/2 + 2 pi n + 1], n = 1..4
SINLOG_PEAK_LOGS = {
    1.9: [275.3467943198291, 144856.61093427596, 77565213.22617738, 41535517152.43504],
    2.1: [-240.1526171065676, -131355.7425566033, -70345910.00677177, -37669657173.1949],
}


def derive_exp_exp_e() -> float:
    with mpmath.workdps(40):
        return float(mpmath.e ** (mpmath.e**mpmath.e))


def derive_exp_plus_z_max(nodes: int = 10**6) -> tuple[float, float]:
    theta = np.linspace(0.0, 2 * np.pi, nodes, endpoint=False)
    z = np.exp(1j * theta)
    vals = np.abs(np.exp(z) + z)
    i = int(vals.argmax())
    return float(vals[i]), float(theta[i])


def derive_sinlog_peak_logs(k: float) -> list[float]:
    out = []
    with mpmath.workdps(40):
        for n in range(1, 5):
            c = mpmath.pi / 2 + 2 * mpmath.pi * n

            def f(u):
                return mpmath.e ** (mpmath.e**u * (1 + mpmath.sin(u) - k) + u)

            integral = mpmath.quad(f, [c - 1, c - 0.5, c, c + 0.5, c + 1])
            out.append(float(mpmath.log(integral)))
    return out


def is_close(a: float, b: float, rel: float) -> bool:
    return math.isclose(a, b, rel_tol=rel)
