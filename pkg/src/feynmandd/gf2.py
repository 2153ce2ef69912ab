"""GF(2) linear algebra on int bitsets.

A row is a Python ``int`` whose bit ``j`` holds column ``j``. XOR of two rows
is a single big-int operation, which is the word-parallel elimination the
boundary matrices need.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def lowest_bit(x: int) -> int:
    """Index of the least significant set bit of a nonzero ``x``."""
    return (x & -x).bit_length() - 1


def bits_of(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def mask_from(start: int, stop: int) -> int:
    """Bitmask with columns ``start <= j < stop`` set."""
    if stop <= start:
        return 0
    return ((1 << (stop - start)) - 1) << start


@dataclass(frozen=True)
class F2Matrix:
    """Dense GF(2) matrix stored as one int bitset per row."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.data)}")
        full = (1 << self.cols) - 1
        for row in self.data:
            if row < 0 or row & ~full:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], cols: int | None = None) -> F2Matrix:
        n_rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if n_rows else 0
        data = []
        for r in dense:
            if len(r) != cols:
                raise ValueError("ragged matrix")
            word = 0
            for j, v in enumerate(r):
                if int(v) & 1:
                    word |= 1 << j
            data.append(word)
        return cls(n_rows, cols, tuple(data))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> F2Matrix:
        return cls(rows, cols, (0,) * rows)

    def to_dense(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.cols)] for row in self.data]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.data[i] >> j) & 1

    def submatrix(self, row_idx: Iterable[int], col_idx: Sequence[int]) -> F2Matrix:
        """Rows ``row_idx`` and columns ``col_idx``, columns renumbered 0.."""
        data = []
        row_idx = list(row_idx)
        for i in row_idx:
            src = self.data[i]
            word = 0
            for new_j, j in enumerate(col_idx):
                if (src >> j) & 1:
                    word |= 1 << new_j
            data.append(word)
        return F2Matrix(len(row_idx), len(col_idx), tuple(data))

    def transpose(self) -> F2Matrix:
        data = []
        for j in range(self.cols):
            word = 0
            for i, row in enumerate(self.data):
                if (row >> j) & 1:
                    word |= 1 << i
            data.append(word)
        return F2Matrix(self.cols, self.rows, tuple(data))

    def rank(self) -> int:
        return rref_rows(self.data).rank


@dataclass(frozen=True)
class RrefBasis:
    """Nonzero rows of a reduced row echelon form, sorted by pivot.

    ``pivots[j]`` is the lowest set column of ``basis_rows[j]``; every other
    basis row is zero there.
    """

    basis_rows: tuple[int, ...]
    pivots: tuple[int, ...]
    cols: int

    @property
    def rank(self) -> int:
        return len(self.basis_rows)

    @classmethod
    def empty(cls, cols: int) -> RrefBasis:
        return cls((), (), cols)

    def span_contains(self, v: int) -> bool:
        return decompose_in_basis(self, v) is not None


def rref_rows(rows: Iterable[int], cols: int | None = None) -> RrefBasis:
    """Reduced row echelon basis of the span of ``rows``."""
    # pivot column -> row with that pivot, kept fully reduced
    by_pivot: dict[int, int] = {}
    for row in rows:
        for p, d in by_pivot.items():
            if (row >> p) & 1:
                row ^= d
        if not row:
            continue
        p = lowest_bit(row)
        for q in list(by_pivot):
            if (by_pivot[q] >> p) & 1:
                by_pivot[q] ^= row
        by_pivot[p] = row
    pivots = tuple(sorted(by_pivot))
    if cols is None:
        cols = max((r.bit_length() for r in by_pivot.values()), default=0)
    return RrefBasis(tuple(by_pivot[p] for p in pivots), pivots, cols)


def rref(m: F2Matrix) -> RrefBasis:
    return rref_rows(m.data, m.cols)


def advance_boundary(prev: RrefBasis, drop_col: int, new_row: int) -> RrefBasis:
    """Move one vertex across a cut.

    ``prev`` spans the rows of the current boundary matrix. Column
    ``drop_col`` leaves the column side and ``new_row`` (already restricted
    to the remaining columns) joins the row side. Only ``rank + 1`` rows are
    re-reduced.
    """
    if not 0 <= drop_col < prev.cols:
        raise ValueError(f"column {drop_col} out of range for {prev.cols} columns")
    if new_row < 0 or new_row >> prev.cols:
        raise ValueError("new row has bits outside the column range")
    keep = ~(1 << drop_col)
    rows = [d & keep for d in prev.basis_rows]
    rows.append(new_row & keep)
    return rref_rows(rows, prev.cols)


def decompose_in_basis(basis: RrefBasis, v: int) -> tuple[int, ...] | None:
    """Coefficients of ``v`` in ``basis``, or ``None`` when ``v`` is outside the span.

    Because the basis is reduced, the coefficient of ``d_j`` is simply the bit
    of ``v`` at pivot ``p_j``.
    """
    coeffs = tuple((v >> p) & 1 for p in basis.pivots)
    acc = 0
    for c, d in zip(coeffs, basis.basis_rows):
        if c:
            acc ^= d
    if acc != v:
        return None
    return coeffs


def pivot_mask(basis: RrefBasis, v: int) -> int:
    """Coefficients of an in-span ``v`` packed into an int (bit j = c_j).

    No span check; callers guarantee membership.
    """
    out = 0
    for j, p in enumerate(basis.pivots):
        if (v >> p) & 1:
            out |= 1 << j
    return out


def rank_of(rows: Iterable[int]) -> int:
    return rref_rows(rows).rank
