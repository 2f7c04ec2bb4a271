"""Independent reference computations used to freeze expected values.

Nothing here imports the evaluation paths under test except where a
quantity is only an input (e.g. the scenario dataclass).
"""

import math

import numpy as np
from scipy import integrate


def fresnel_quad(v: float) -> tuple[float, float]:
    """C(v), S(v) by adaptive quadrature, split between zeros of the integrand phase."""
    x = abs(v)
    if x == 0:
        return 0.0, 0.0
    # pi s^2 / 2 = k pi / 2 at s = sqrt(k): quarter-period nodes
    nodes = [0.0] + [math.sqrt(k) for k in range(1, int(x * x) + 1) if math.sqrt(k) < x] + [x]
    c = s = 0.0
    for a, b in zip(nodes[:-1], nodes[1:]):
        c += integrate.quad(lambda t: math.cos(math.pi * t * t / 2), a, b, epsabs=1e-14, epsrel=1e-13)[0]
        s += integrate.quad(lambda t: math.sin(math.pi * t * t / 2), a, b, epsabs=1e-14, epsrel=1e-13)[0]
    sign = 1.0 if v > 0 else -1.0
    return sign * c, sign * s


def gain_quad(v: float) -> float:
    c, s = fresnel_quad(v)
    return math.sqrt((1 - c - s) ** 2 + (c - s) ** 2) / 2


def loss_quad(v: float) -> float:
    return -20 * math.log10(gain_quad(v))


def v_by_hand(d1, d2, h, hz):
    lam = 299_792_458.0 / hz
    return h * math.sqrt(2 / lam * (1 / d1 + 1 / d2))


def brute_alpha(j, meas, n=1_000_000, lo=1e-3, hi=1e6, chunk=20_000):
    """Least-squares alpha by exhaustive log-spaced search."""
    j = np.asarray(j, dtype=float)
    meas = np.asarray(meas, dtype=float)
    grid = np.logspace(math.log10(lo), math.log10(hi), n)
    best, best_cost = None, np.inf
    for start in range(0, n, chunk):
        a = grid[start:start + chunk, None]
        model = 20 * np.log10(1 + 1 / a) - 20 * np.log10(j[None, :] + 1 / a)
        cost = ((meas[None, :] - model) ** 2).sum(axis=1)
        k = int(np.argmin(cost))
        if cost[k] < best_cost:
            best, best_cost = float(grid[start + k]), float(cost[k])
    return best
