"""Transition matrices for the braid family, built by gluing star blocks.

A parameter tuple (m_1, ..., m_{k+1}) describes a chain of star-shaped
trees; the matrix of the induced graph map is assembled level by level.
Writing n_j = m_1 + ... + m_j + j for the block boundaries, level 0 is the
cyclic rotation matrix of the first star and gluing star i+1 appends rows
and columns n_i+1 .. n_{i+1}:

* rows n_i - 1 and n_i gain an entry 1 in column n_i + 1;
* row n_i + 1 reads 1 in column 1, 2 in every column n_j + 1 with j < i,
  and 1 in columns n_i + 1 and n_i + 2;
* rows n_i + 2 .. n_{i+1} - 1 carry a unit superdiagonal;
* row n_{i+1} reads 1 in column 1, 2 in every column n_j + 1 with j < i,
  and 2 in column n_i + 1.

The upper-left (n_i + 1)-square block is the transition matrix of the
dominant (restricted) map, and two bordered determinants extract the
recessive polynomials of the family; both are independent of any further
parameters, which :func:`dominant_matrix` asserts on every call.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intpoly import IntPoly
from .nnmatrix import NNMatrix, poly_matrix_det

__all__ = [
    "BraidTuple",
    "TreeMapSpec",
    "StructureCheck",
    "StructureReport",
    "block_boundaries",
    "transition_matrix",
    "dominant_matrix",
    "recessive_poly",
    "dual_recessive_poly",
    "validate_structure",
]


@dataclass(frozen=True)
class BraidTuple:
    """Parameter tuple (m_1, ..., m_{k+1}) selecting one braid of the family."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if len(vals) < 2:
            raise ValueError(
                "a braid tuple needs at least two parameters; "
                "a single star does not define a member of the family"
            )
        if any(v < 1 for v in vals):
            raise ValueError("every parameter must be >= 1")
        object.__setattr__(self, "values", vals)

    @classmethod
    def parse(cls, text):
        try:
            vals = tuple(int(tok) for tok in text.split(","))
        except ValueError:
            raise ValueError(f"cannot parse braid tuple {text!r}") from None
        return cls(vals)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __str__(self):
        return ",".join(str(v) for v in self.values)

    @property
    def k(self):
        return len(self.values) - 1

    @property
    def boundaries(self):
        """The indices n_j = m_1 + ... + m_j + j for j = 1..k+1."""
        return block_boundaries(self.values)

    @property
    def size(self):
        return self.boundaries[-1]

    @property
    def sign(self):
        """(-1)^(k+1): +1 for an even number of parameters, -1 for odd."""
        return 1 if len(self.values) % 2 == 0 else -1

    @property
    def prefix(self):
        return self.values[:-1]


def block_boundaries(values):
    out = []
    total = 0
    for j, m in enumerate(values, start=1):
        total += m
        out.append(total + j)
    return tuple(out)


def _as_params(values, minimum, what):
    if isinstance(values, BraidTuple):
        vals = values.values
    else:
        vals = tuple(int(v) for v in values)
    if len(vals) < minimum:
        raise ValueError(f"{what} needs at least {minimum} parameter(s)")
    if any(v < 1 for v in vals):
        raise ValueError("every parameter must be >= 1")
    return vals


def transition_matrix(m):
    """Transition matrix of the combined map for the full tuple ``m``."""
    if not isinstance(m, BraidTuple):
        m = BraidTuple(tuple(int(v) for v in m))
    return NNMatrix(m.size, _entries(m.values))


def _entries(values):
    ns = block_boundaries(values)
    e = {}
    first = ns[0]
    for i in range(1, first):
        e[(i, i + 1)] = 1
    e[(first, 1)] = 1
    for level in range(1, len(values)):
        lo = ns[level - 1]
        hi = ns[level]
        e[(lo - 1, lo + 1)] = 1
        e[(lo, lo + 1)] = 1
        row = lo + 1
        e[(row, 1)] = 1
        for j in range(level - 1):
            e[(row, ns[j] + 1)] = 2
        e[(row, lo + 1)] = 1
        e[(row, lo + 2)] = 1
        for r in range(lo + 2, hi):
            e[(r, r + 1)] = 1
        e[(hi, 1)] = 1
        for j in range(level - 1):
            e[(hi, ns[j] + 1)] = 2
        e[(hi, lo + 1)] = 2
    return e


def dominant_matrix(prefix):
    """Transition matrix of the dominant map for a parameter prefix.

    This is the upper-left (n_i + 1)-square block of any extension of the
    prefix; independence of the appended parameter is asserted.
    """
    vals = _as_params(prefix, 1, "dominant_matrix")
    cut = block_boundaries(vals)[-1] + 1
    block = transition_matrix(vals + (1,)).submatrix(cut)
    assert block == transition_matrix(vals + (2,)).submatrix(cut), (
        "dominant block depends on the appended parameter"
    )
    return block


def recessive_poly(prefix):
    """Recessive polynomial of the family extending ``prefix``.

    Determinant of the bordered block: take tI - B for any extension B,
    replace row n_i + 1 by the last row, and keep the upper-left
    (n_i + 1)-square corner.  Independent of the appended parameter.
    """
    return _bordered_det(prefix, reciprocal=False)


def dual_recessive_poly(prefix):
    """Same bordered determinant applied to I - tB instead of tI - B."""
    return _bordered_det(prefix, reciprocal=True)


def _bordered_det(prefix, reciprocal):
    vals = _as_params(prefix, 1, "recessive polynomial")
    matrix = transition_matrix(vals + (1,))
    cut = block_boundaries(vals)[-1] + 1
    last = matrix.size
    t = IntPoly.monomial(1)
    rows = []
    for i in range(1, cut + 1):
        src = last if i == cut else i
        row = []
        for j in range(1, cut + 1):
            a = matrix.entry(src, j)
            if reciprocal:
                cell = IntPoly((1,)) - t * a if src == j else IntPoly((-a,)) * t
            else:
                cell = t - a if src == j else IntPoly((-a,))
            row.append(cell)
        rows.append(row)
    return poly_matrix_det(rows)


@dataclass(frozen=True)
class StructureCheck:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class StructureReport:
    tuple_values: tuple[int, ...]
    checks: tuple[StructureCheck, ...]

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    @property
    def failures(self):
        return tuple(c for c in self.checks if not c.ok)

    def __str__(self):
        lines = [f"structure checks for ({','.join(map(str, self.tuple_values))}):"]
        for c in self.checks:
            lines.append(f"  [{'ok' if c.ok else 'FAIL'}] {c.name}: {c.detail}")
        return "\n".join(lines)


def validate_structure(m):
    """Check the gluing-pattern entries of the transition matrix of ``m``.

    With l = n_k the checks are: entry (l, l+1) > 0; entry (l+1, l+1) > 0;
    entry (N, l+1) > 1; rows l+1 and N agree on columns 1..l; and the rows
    strictly between them form a unit superdiagonal with nothing else.
    """
    if not isinstance(m, BraidTuple):
        m = BraidTuple(tuple(int(v) for v in m))
    matrix = transition_matrix(m)
    ns = m.boundaries
    l = ns[-2]
    last = ns[-1]
    checks = []

    def record(name, ok, detail):
        checks.append(StructureCheck(name, ok, detail))

    v = matrix.entry(l, l + 1)
    record("feed_from_previous_block", v > 0, f"entry ({l},{l + 1}) = {v}")
    v = matrix.entry(l + 1, l + 1)
    record("hub_self_transition", v > 0, f"entry ({l + 1},{l + 1}) = {v}")
    v = matrix.entry(last, l + 1)
    record("last_row_hub_weight", v > 1, f"entry ({last},{l + 1}) = {v}")

    mismatch = [
        j
        for j in range(1, l + 1)
        if matrix.entry(l + 1, j) != matrix.entry(last, j)
    ]
    record(
        "hub_and_last_rows_agree",
        not mismatch,
        "columns 1..%d match" % l
        if not mismatch
        else "mismatch at columns %s" % mismatch,
    )

    bad = []
    for r in range(l + 2, last):
        row_entries = {j: matrix.entry(r, j) for j in range(1, last + 1) if matrix.entry(r, j)}
        if row_entries != {r + 1: 1}:
            bad.append((r, row_entries))
    record(
        "middle_rows_unit_superdiagonal",
        not bad,
        "rows %d..%d" % (l + 2, last - 1) if not bad else f"offending rows {bad}",
    )
    return StructureReport(m.values, tuple(checks))


@dataclass(frozen=True)
class TreeMapSpec:
    """A graph self-map given by edge images, kept as transition counts only.

    ``images[j]`` lists the edges crossed by the image of edge j; a negative
    index means the edge is traversed against its orientation.  Only the
    unordered crossing counts are meaningful here, and they must reproduce
    the transition matrix entry (|i|, j) -> count.
    """

    edge_count: int
    images: dict[int, tuple[int, ...]]

    def __post_init__(self):
        if self.edge_count < 1:
            raise ValueError("edge_count must be >= 1")
        for j, path in self.images.items():
            if not (1 <= j <= self.edge_count):
                raise ValueError(f"image given for unknown edge {j}")
            for e in path:
                if not (1 <= abs(e) <= self.edge_count):
                    raise ValueError(f"edge path of {j} crosses unknown edge {e}")

    def transition_matrix(self):
        entries = {}
        for j, path in self.images.items():
            for e in path:
                key = (abs(e), j)
                entries[key] = entries.get(key, 0) + 1
        return NNMatrix(self.edge_count, entries)

    def matches(self, matrix):
        """True when the crossing counts reproduce ``matrix`` exactly."""
        return self.transition_matrix() == matrix
