"""Sparse non-negative integer matrices with a Perron-Frobenius toolkit.

The directed graph of a matrix T has an edge from vertex j to vertex i
exactly when the entry (i, j) is nonzero; irreducibility and primitivity
are decided on that graph.  Characteristic polynomials are computed
exactly (fraction-free Bareiss elimination at integer nodes followed by
exact interpolation), the spectral radius numerically with a certified
Collatz-Wielandt enclosure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .intpoly import IntPoly

__all__ = ["NNMatrix", "PFCertificate", "poly_matrix_det"]


@dataclass(frozen=True)
class PFCertificate:
    """Outcome of a spectral-radius computation on a primitive matrix."""

    irreducible: bool
    primitive: bool
    eigenvalue: float
    right_eigenvector: tuple[float, ...]
    residual: float


class NNMatrix:
    """Square matrix with non-negative integer entries, stored sparsely.

    ``entries`` maps 1-based ``(row, col)`` pairs to strictly positive
    integers; absent pairs are zero.  Instances are immutable values.
    """

    __slots__ = ("size", "entries", "_succ", "_rows")

    def __init__(self, size, entries):
        size = int(size)
        if size < 1:
            raise ValueError("matrix size must be >= 1")
        clean = {}
        for (i, j), v in dict(entries).items():
            i, j, v = int(i), int(j), int(v)
            if not (1 <= i <= size and 1 <= j <= size):
                raise ValueError(f"entry ({i},{j}) outside 1..{size}")
            if v < 0:
                raise ValueError(f"entry ({i},{j}) is negative")
            if v:
                clean[(i, j)] = v
        self.size = size
        self.entries = clean
        self._succ = None
        self._rows = None

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix rows must form a square array")
        entries = {
            (i + 1, j + 1): v for i, r in enumerate(rows) for j, v in enumerate(r) if v
        }
        return cls(n, entries)

    @classmethod
    def from_text(cls, text):
        """Parse the wire format: first line N, then one 'row col value' per line."""
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        n = int(lines[0])
        entries = {}
        for ln in lines[1:]:
            i, j, v = (int(tok) for tok in ln.split())
            entries[(i, j)] = v
        return cls(n, entries)

    def text(self):
        lines = [str(self.size)]
        for (i, j), v in sorted(self.entries.items()):
            lines.append(f"{i} {j} {v}")
        return "\n".join(lines) + "\n"

    def to_rows(self):
        rows = [[0] * self.size for _ in range(self.size)]
        for (i, j), v in self.entries.items():
            rows[i - 1][j - 1] = v
        return rows

    def pretty(self):
        rows = self.to_rows()
        width = max(len(str(v)) for r in rows for v in r)
        return "\n".join(" ".join(str(v).rjust(width) for v in r) for r in rows)

    def entry(self, i, j):
        return self.entries.get((i, j), 0)

    def submatrix(self, n):
        """Upper-left n-by-n corner."""
        if not (1 <= n <= self.size):
            raise ValueError("submatrix size out of range")
        return NNMatrix(
            n, {(i, j): v for (i, j), v in self.entries.items() if i <= n and j <= n}
        )

    def transpose(self):
        return NNMatrix(self.size, {(j, i): v for (i, j), v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, NNMatrix):
            return NotImplemented
        return self.size == other.size and self.entries == other.entries

    def __hash__(self):
        return hash((self.size, frozenset(self.entries.items())))

    def __repr__(self):
        return f"NNMatrix(size={self.size}, nonzeros={len(self.entries)})"

    # -- digraph machinery -------------------------------------------------

    def _successors(self):
        # successor list of the directed graph: edge j -> i iff entry (i,j) != 0
        if self._succ is None:
            succ = [[] for _ in range(self.size)]
            for (i, j) in self.entries:
                succ[j - 1].append(i - 1)
            self._succ = succ
        return self._succ

    def is_irreducible(self):
        """True iff the directed graph is strongly connected.

        A 1x1 matrix is irreducible only with a self-loop (a positive-length
        closed walk is required).
        """
        n = self.size
        if n == 1:
            return (1, 1) in self.entries
        succ = self._successors()
        pred = [[] for _ in range(n)]
        for u, vs in enumerate(succ):
            for v in vs:
                pred[v].append(u)
        return _reaches_all(succ, n) and _reaches_all(pred, n)

    def _period(self):
        # gcd of cycle lengths, valid when strongly connected
        succ = self._successors()
        n = self.size
        dist = [-1] * n
        dist[0] = 0
        frontier = [0]
        while frontier:
            nxt = []
            for u in frontier:
                for v in succ[u]:
                    if dist[v] < 0:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        g = 0
        for u in range(n):
            for v in succ[u]:
                g = math.gcd(g, dist[u] + 1 - dist[v])
        return g

    def is_primitive(self):
        """True iff irreducible with cycle-length gcd 1.

        For sizes <= 8 the answer is cross-checked against brute-force
        positivity of M^((N-1)^2 + 1) (the Wielandt exponent).
        """
        if not self.is_irreducible():
            if self.size <= 8:
                assert not self._wielandt_positive()
            return False
        primitive = self._period() == 1
        if self.size <= 8:
            assert primitive == self._wielandt_positive()
        return primitive

    def _wielandt_positive(self):
        n = self.size
        rows = [0] * n
        for (i, j) in self.entries:
            rows[i - 1] |= 1 << (j - 1)
        power = (n - 1) * (n - 1) + 1
        full = (1 << n) - 1
        result = [1 << i for i in range(n)]  # identity
        base = rows
        while power:
            if power & 1:
                result = _bool_matmul(result, base, n)
            power >>= 1
            if power:
                base = _bool_matmul(base, base, n)
        return all(r == full for r in result)

    # -- numerics ----------------------------------------------------------

    def _row_major(self):
        if self._rows is None:
            rows = [[] for _ in range(self.size)]
            for (i, j), v in sorted(self.entries.items()):
                rows[i - 1].append((j - 1, v))
            self._rows = rows
        return self._rows

    def matvec(self, v):
        return [sum(val * v[j] for j, val in row) for row in self._row_major()]

    def spectral_radius(self, tol=1e-10):
        """Perron-Frobenius eigenvalue and eigenvector of a primitive matrix.

        Power iteration from the all-ones vector; stops once the
        Collatz-Wielandt enclosure min_i (Mv)_i/v_i <= lambda <= max_i
        (Mv)_i/v_i is narrower than tol, which certifies the returned
        eigenvalue to tol.  The eigenvector is normalized to max entry 1.
        Large matrices run the same loop on a scipy.sparse matvec.
        """
        if tol <= 0:
            raise ValueError("tol must be positive")
        if not self.is_primitive():
            raise ValueError(
                "spectral_radius requires a primitive matrix "
                "(power iteration is only guaranteed there)"
            )
        if self.size >= 128:
            return self._spectral_radius_sparse(tol)
        v = [1.0] * self.size
        for _ in range(1_000_000):
            w = self.matvec(v)
            lo = min(wi / vi for wi, vi in zip(w, v))
            hi = max(wi / vi for wi, vi in zip(w, v))
            if hi - lo <= tol:
                lam = 0.5 * (lo + hi)
                residual = max(abs(wi - lam * vi) for wi, vi in zip(w, v))
                return PFCertificate(True, True, lam, tuple(v), residual)
            top = max(w)
            v = [wi / top for wi in w]
        raise RuntimeError("power iteration did not converge within 10^6 steps")

    def _spectral_radius_sparse(self, tol):
        import numpy as np
        from scipy.sparse import csr_matrix

        keys = list(self.entries)
        rows = np.array([i - 1 for i, _ in keys], dtype=np.int64)
        cols = np.array([j - 1 for _, j in keys], dtype=np.int64)
        vals = np.array([self.entries[k] for k in keys], dtype=float)
        a = csr_matrix((vals, (rows, cols)), shape=(self.size, self.size))
        v = np.ones(self.size)
        for _ in range(1_000_000):
            w = a @ v
            ratios = w / v
            lo = float(ratios.min())
            hi = float(ratios.max())
            if hi - lo <= tol:
                lam = 0.5 * (lo + hi)
                residual = float(np.max(np.abs(w - lam * v)))
                return PFCertificate(True, True, lam, tuple(v.tolist()), residual)
            v = w / w.max()
        raise RuntimeError("power iteration did not converge within 10^6 steps")

    def subinvariance_bound(self, y):
        """min over i with y_i > 0 of (My)_i / y_i, for primitive M.

        For strictly positive y the returned s satisfies My >= s*y, hence
        lambda >= s, with equality iff My = s*y.  A vector with any zero
        coordinate yields the trivial bound 0 by convention.
        """
        if not self.is_primitive():
            raise ValueError("subinvariance_bound requires a primitive matrix")
        y = list(y)
        if len(y) != self.size:
            raise ValueError("vector length does not match matrix size")
        if any(yi < 0 for yi in y):
            raise ValueError("y must be non-negative")
        if not any(y):
            raise ValueError("y must be non-zero")
        if min(y) == 0:
            return 0.0
        w = self.matvec(y)
        return min(wi / yi for wi, yi in zip(w, y))

    def char_poly(self):
        """Exact monic characteristic polynomial det(tI - M).

        Evaluates the determinant at the integer nodes 0..N with
        fraction-free Bareiss elimination and interpolates exactly.
        """
        n = self.size
        base = [[-v for v in row] for row in self.to_rows()]
        values = []
        for x in range(n + 1):
            work = [row[:] for row in base]
            for i in range(n):
                work[i][i] += x
            values.append(_bareiss_det(work))
        poly = _interpolate_at_integer_nodes(values)
        if poly.degree != n or not poly.is_monic():
            raise AssertionError("characteristic polynomial is not monic of degree N")
        return poly


def _reaches_all(adj, n):
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count == n


def _bool_matmul(a, b, n):
    out = []
    for row in a:
        acc = 0
        rem = row
        while rem:
            k = (rem & -rem).bit_length() - 1
            acc |= b[k]
            rem &= rem - 1
        out.append(acc)
    return out


def _bareiss_det(a):
    """Fraction-free determinant of a square integer matrix (mutates a)."""
    n = len(a)
    sign = 1
    prev = 1
    for r in range(n - 1):
        ar = a[r]
        piv = ar[r]
        if piv == 0:
            for rr in range(r + 1, n):
                if a[rr][r]:
                    a[r], a[rr] = a[rr], a[r]
                    sign = -sign
                    ar = a[r]
                    piv = ar[r]
                    break
            else:
                return 0
        for i in range(r + 1, n):
            ai = a[i]
            f = ai[r]
            if f:
                for j in range(r + 1, n):
                    ai[j] = (piv * ai[j] - f * ar[j]) // prev
                ai[r] = 0
            elif piv != prev:
                for j in range(r + 1, n):
                    v = ai[j]
                    if v:
                        ai[j] = piv * v // prev
        prev = piv
    return sign * a[n - 1][n - 1]


_FALLING = [[1]]  # falling-factorial basis x(x-1)...(x-j+1), integer coefficients


def _falling_basis(j):
    while len(_FALLING) <= j:
        prev = _FALLING[-1]
        step = len(_FALLING) - 1
        nxt = [0] * (len(prev) + 1)
        for i, c in enumerate(prev):
            nxt[i + 1] += c
            nxt[i] -= step * c
        _FALLING.append(nxt)
    return _FALLING[j]


def _interpolate_at_integer_nodes(values):
    """Exact polynomial through the points (0, values[0]), (1, values[1]), ..."""
    deltas = []
    level = list(values)
    deltas.append(level[0])
    while len(level) > 1:
        level = [level[i + 1] - level[i] for i in range(len(level) - 1)]
        deltas.append(level[0])
    coeffs = [Fraction(0)] * len(values)
    for j, dj in enumerate(deltas):
        if dj:
            fj = Fraction(dj, math.factorial(j))
            for i, b in enumerate(_falling_basis(j)):
                if b:
                    coeffs[i] += fj * b
    if any(c.denominator != 1 for c in coeffs):
        raise AssertionError("interpolation produced non-integer coefficients")
    return IntPoly(int(c) for c in coeffs)


def poly_matrix_det(rows):
    """Exact determinant of a square matrix of IntPoly entries.

    Works by evaluating the determinant at enough integer nodes and
    interpolating; the node count comes from the row-degree bound on the
    determinant degree.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("polynomial matrix must be square")
    if n == 0:
        return IntPoly((1,))
    bound = 0
    for r in rows:
        degs = [p.degree for p in r if not p.is_zero()]
        if degs:
            bound += max(degs)
    values = []
    for x in range(bound + 1):
        work = [[p(x) for p in r] for r in rows]
        values.append(_bareiss_det(work))
    return _interpolate_at_integer_nodes(values)
