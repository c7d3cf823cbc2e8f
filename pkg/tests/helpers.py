"""Independent oracles for the test suite.

Everything here is deliberately naive (cofactor expansion, plain rational
bisection, boolean matrix powers) so the library's fast paths are checked
against arithmetic that shares nothing with them.
"""

from fractions import Fraction

import numpy as np

from pabraid import IntPoly, NNMatrix


def bisect_root(poly, lo, hi, steps=60):
    """Exact-rational bisection; requires poly(lo) < 0 < poly(hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    assert poly(lo) < 0 < poly(hi)
    for _ in range(steps):
        mid = (lo + hi) / 2
        v = poly(mid)
        if v == 0:
            return float(mid)
        if v < 0:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def cofactor_det(rows):
    """Determinant of a square matrix of IntPoly entries by cofactor expansion."""
    n = len(rows)
    one = IntPoly((1,))
    memo = {}

    def expand(r, colmask):
        if r == n:
            return one
        key = colmask
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = IntPoly()
        sign = 1
        for j in range(n):
            bit = 1 << j
            if not colmask & bit:
                continue
            entry = rows[r][j]
            if not entry.is_zero():
                sub = expand(r + 1, colmask & ~bit)
                term = entry * sub
                total = total + term if sign > 0 else total - term
            sign = -sign
        memo[key] = total
        return total

    return expand(0, (1 << n) - 1)


def char_poly_oracle(matrix):
    """det(tI - M) by cofactor expansion over polynomial entries."""
    t = IntPoly.monomial(1)
    dense = matrix.to_rows()
    rows = [
        [(t - v) if i == j else IntPoly((-v,)) for j, v in enumerate(row)]
        for i, row in enumerate(dense)
    ]
    return cofactor_det(rows)


def det_identity_minus_tm(matrix):
    """det(I - t*M) by cofactor expansion over polynomial entries."""
    t = IntPoly.monomial(1)
    dense = matrix.to_rows()
    rows = [
        [IntPoly((1,)) - t * v if i == j else IntPoly((0, -v)) for j, v in enumerate(row)]
        for i, row in enumerate(dense)
    ]
    return cofactor_det(rows)


def wielandt_positive(matrix):
    """Whether M^((N-1)^2 + 1) is entrywise positive, by boolean powers."""
    n = matrix.size
    adj = np.array(matrix.to_rows(), dtype=np.int64) > 0
    power = (n - 1) * (n - 1) + 1
    result = np.eye(n, dtype=bool)
    base = adj
    while power:
        if power & 1:
            result = (result.astype(np.int64) @ base.astype(np.int64)) > 0
        power >>= 1
        if power:
            base = (base.astype(np.int64) @ base.astype(np.int64)) > 0
    return bool(result.all())


def random_nn_matrix(rng, max_size=8, max_entry=3):
    n = rng.randint(1, max_size)
    entries = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if rng.random() < 0.45:
                entries[(i, j)] = rng.randint(1, max_entry)
    return NNMatrix(n, entries)


def random_primitive_matrix(rng, max_size=8, max_entry=3):
    while True:
        m = random_nn_matrix(rng, max_size, max_entry)
        if m.is_primitive():
            return m


GOLDEN_8x8 = [
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 0, 0],
    [1, 0, 0, 0, 0, 1, 0, 0],
    [1, 0, 0, 0, 0, 1, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 2, 0, 0],
]
