"""Volume lower bounds for the family and the small-dilatation parameter search.

The closed braids here are alternating links whose twist number is the
tuple length, which gives the lower bound (k-1)/2 times the volume of the
regular ideal tetrahedron.  That constant is computed by quadrature, never
hard-coded, and a second independent quadrature certifies it in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.integrate import quad

from .dilatation import dilatation
from .intpoly import IntPoly, largest_real_root
from .treebuilder import BraidTuple

__all__ = [
    "lobachevsky",
    "lobachevsky_by_parts",
    "ideal_tetrahedron_volume",
    "volume_lower_bound",
    "twist_number",
    "BoundReport",
    "find_parameters",
]


def lobachevsky(theta):
    """Lobachevsky function: minus the integral of log|2 sin u| over [0, theta]."""
    if theta == 0.0:
        return 0.0
    value, _ = quad(lambda u: math.log(abs(2.0 * math.sin(u))), 0.0, theta, limit=200)
    return -value


def lobachevsky_by_parts(theta):
    """Independent evaluation via integration by parts.

    Rewrites the defining integral as -theta log(2 sin theta) plus the
    integral of u cot u, whose integrand is analytic at 0, and integrates
    the latter with an in-house adaptive Simpson rule.
    """
    if theta == 0.0:
        return 0.0

    def integrand(u):
        return 1.0 if u == 0.0 else u * math.cos(u) / math.sin(u)

    tail = _adaptive_simpson(integrand, 0.0, theta, 1e-13)
    return -theta * math.log(2.0 * math.sin(theta)) + tail


def _adaptive_simpson(g, a, b, eps):
    fa, fb = g(a), g(b)
    m = 0.5 * (a + b)
    fm = g(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_step(g, a, b, fa, fm, fb, whole, eps, 50)


def _simpson_step(g, a, b, fa, fm, fb, whole, eps, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = g(lm), g(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if depth <= 0 or abs(left + right - whole) <= 15.0 * eps:
        return left + right + (left + right - whole) / 15.0
    half = 0.5 * eps
    return _simpson_step(g, a, m, fa, flm, fm, left, half, depth - 1) + _simpson_step(
        g, m, b, fm, frm, fb, right, half, depth - 1
    )


@lru_cache(maxsize=1)
def ideal_tetrahedron_volume():
    """Volume of the regular ideal hyperbolic tetrahedron, 3 Lob(pi/3)."""
    return 3.0 * lobachevsky(math.pi / 3.0)


def volume_lower_bound(k):
    """Lower bound (k-1)/2 times the ideal tetrahedron volume, for k >= 1."""
    k = int(k)
    if k < 1:
        raise ValueError("k must be >= 1")
    return 0.5 * (k - 1) * ideal_tetrahedron_volume()


def twist_number(m):
    """Twist number of the alternating closed braid: the tuple length k+1."""
    if not isinstance(m, BraidTuple):
        m = BraidTuple(tuple(int(v) for v in m))
    return len(m)


@dataclass(frozen=True)
class BoundReport:
    """Witness parameters: dilatation below target, volume bound above target."""

    k: int
    m: int
    lambda_achieved: float
    volume_bound: float
    target_lambda: float
    target_volume: float

    def to_json_dict(self):
        return {
            "k": self.k,
            "m": self.m,
            "lambda_achieved": self.lambda_achieved,
            "volume_bound": self.volume_bound,
            "target_lambda": self.target_lambda,
            "target_volume": self.target_volume,
        }


_SEARCH_CAP = 10**6


def find_parameters(target_lambda, target_volume, tol=1e-10):
    """Smallest (k, m) with the diagonal tuple beating both targets.

    k is the least value whose volume bound exceeds ``target_volume``; m is
    the least value for which the diagonal tuple (m, ..., m) with k+1
    entries has dilatation below ``target_lambda`` (monotone in m, so found
    by doubling plus binary search).  By monotonicity any tuple with every
    entry >= m satisfies the dilatation bound as well; one off-diagonal
    spot check per report asserts that.
    """
    target_lambda = float(target_lambda)
    target_volume = float(target_volume)
    if target_lambda <= 1.0:
        raise ValueError("target_lambda must exceed 1")
    if target_volume <= 0.0:
        raise ValueError("target_volume must be positive")

    v3 = ideal_tetrahedron_volume()
    k = max(1, int(math.floor(2.0 * target_volume / v3)) + 2)
    while k > 1 and volume_lower_bound(k - 1) > target_volume:
        k -= 1
    while volume_lower_bound(k) <= target_volume:
        k += 1

    width = k + 1
    cache = {}

    def diagonal_lambda(mm):
        if mm not in cache:
            report = dilatation((mm,) * width, method="formula", tol=tol)
            cache[mm] = report.lambda_formula
        return cache[mm]

    # the chain-base root is a lower bound for the dilatation, so its own
    # threshold is a cheap starting point for the doubling phase
    def base_root(mm):
        poly = IntPoly((-1, 1)).shift(mm + 1) - IntPoly((0, 2))
        return largest_real_root(poly, lower=1.0, tol=tol)

    start = 1
    while base_root(start) >= target_lambda:
        start *= 2
        if start > _SEARCH_CAP:
            raise RuntimeError("parameter search exceeded the cap")
    lo = start // 2
    while start - lo > 1:
        mid = (start + lo) // 2
        if base_root(mid) < target_lambda:
            start = mid
        else:
            lo = mid

    # every m below `start` already fails the cheap lower bound
    probe = start
    lo_fail = start - 1
    while diagonal_lambda(probe) >= target_lambda:
        lo_fail = probe
        probe *= 2
        if probe > _SEARCH_CAP:
            raise RuntimeError("parameter search exceeded the cap")
    hi = probe
    while hi - lo_fail > 1:
        mid = (hi + lo_fail) // 2
        if diagonal_lambda(mid) < target_lambda:
            hi = mid
        else:
            lo_fail = mid
    m = hi
    achieved = diagonal_lambda(m)

    off_diagonal = (m + 1,) + (m,) * k
    off_lambda = dilatation(off_diagonal, method="formula", tol=tol).lambda_formula
    assert off_lambda <= achieved + 10 * tol, "monotonicity spot check failed"

    # certify the witness through the independent matrix route
    matrix_lambda = dilatation((m,) * width, method="matrix", tol=tol).lambda_matrix
    assert abs(matrix_lambda - achieved) <= 1e-9, (
        f"formula/matrix disagreement at the witness: {achieved} vs {matrix_lambda}"
    )

    return BoundReport(
        k=k,
        m=m,
        lambda_achieved=achieved,
        volume_bound=volume_lower_bound(k),
        target_lambda=target_lambda,
        target_volume=target_volume,
    )
