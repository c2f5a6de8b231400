"""Exact rational linear algebra: RREF, rank, nullspace, span, membership.

Everything runs over the rationals with arbitrary-precision arithmetic
(``fractions.Fraction``), so every answer is exact and every reduction is
deterministic: pivots are chosen as the first nonzero entry scanning
top-to-bottom, left-to-right, never by magnitude.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?\Z")


class DimensionMismatchError(ValueError):
    """Operands have incompatible shapes."""


def rat(value: int | str | Fraction) -> Fraction:
    """Coerce an int, Fraction, or strict "p/q"-style string to a Fraction.

    String form allows a sign on the numerator only, no whitespace, and a
    positive denominator: "3", "-1/2".
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def rat_str(value: Fraction) -> str:
    """Serialize as "p/q", or just "p" when the denominator is 1."""
    return str(value)


def vec(values: Iterable[int | str | Fraction]) -> Vector:
    return tuple(rat(v) for v in values)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense rational matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | str | Fraction]]) -> "Matrix":
        if not rows:
            return cls(0, 0, ())
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise DimensionMismatchError("ragged rows")
        return cls(len(rows), width, tuple(rat(x) for row in rows for x in row))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n)))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def matvec(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"matvec: {self.cols} columns vs vector of length {len(v)}")
        return tuple(sum((self.at(i, j) * v[j] for j in range(self.cols)), Fraction(0)) for i in range(self.rows))

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"matmul: {self.cols} vs {other.rows}")
        entries = []
        for i in range(self.rows):
            for j in range(other.cols):
                entries.append(
                    sum((self.at(i, k) * other.at(k, j) for k in range(self.cols)), Fraction(0))
                )
        return Matrix(self.rows, other.cols, tuple(entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("matrix subtraction shape mismatch")
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("matrix addition shape mismatch")
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Reduced row echelon form of ``m``.

    Returns ``(reduced, pivot_columns, rank)``.  The reduction is the unique
    RREF; the pivot rule (first nonzero entry, scanning rows top-to-bottom
    within each column left-to-right) makes the elimination sequence itself
    deterministic as well.
    """
    work = [list(m.row(i)) for i in range(m.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, m.rows):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = work[r][c]
        if inv != 1:
            work[r] = [x / inv for x in work[r]]
        for i in range(m.rows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    reduced = Matrix(m.rows, m.cols, tuple(x for row in work for x in row))
    return reduced, tuple(pivots), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


@dataclass(frozen=True)
class SubspaceBasis:
    """Canonical basis of a rational subspace.

    The rows are in reduced echelon form (leading entry 1, zeros above and
    below each pivot), so two equal subspaces always compare equal as values.
    Construct through :func:`span` or :func:`nullspace`.
    """

    ambient_dim: int
    vectors: tuple[Vector, ...]

    def __post_init__(self) -> None:
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise DimensionMismatchError("basis vector of wrong length")
        if self.vectors:
            reduced, _, rk = rref(Matrix.from_rows(self.vectors))
            if rk != len(self.vectors) or tuple(
                reduced.row(i) for i in range(rk)
            ) != self.vectors:
                raise ValueError("basis is not in canonical reduced echelon form")

    @property
    def dimension(self) -> int:
        return len(self.vectors)


def span(vectors: Iterable[Sequence[int | str | Fraction]], ambient_dim: int | None = None) -> SubspaceBasis:
    """Canonical basis of the span of ``vectors``.

    ``ambient_dim`` is required when ``vectors`` is empty and inferred (and
    cross-checked) otherwise.
    """
    vecs = [vec(v) for v in vectors]
    if not vecs:
        if ambient_dim is None:
            raise ValueError("ambient_dim required for an empty generating set")
        return SubspaceBasis(ambient_dim, ())
    n = len(vecs[0])
    if ambient_dim is not None and ambient_dim != n:
        raise DimensionMismatchError(f"ambient_dim {ambient_dim} vs vectors of length {n}")
    for v in vecs:
        if len(v) != n:
            raise DimensionMismatchError("vectors of mixed lengths")
    reduced, _, rk = rref(Matrix.from_rows(vecs))
    return SubspaceBasis(n, tuple(reduced.row(i) for i in range(rk)))


def nullspace(m: Matrix) -> SubspaceBasis:
    """Canonical basis of ``{v : m @ v = 0}``; dimension is cols - rank."""
    reduced, pivots, rk = rref(m)
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for free_col in range(m.cols):
        if free_col in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free_col] = Fraction(1)
        for row_idx, pivot_col in enumerate(pivots):
            v[pivot_col] = -reduced.at(row_idx, free_col)
        basis.append(tuple(v))
    return span(basis, ambient_dim=m.cols)


def contains(s: SubspaceBasis, v: Sequence[int | str | Fraction]) -> bool:
    """Exact membership test: is ``v`` in the span of ``s``?"""
    w = list(vec(v))
    if len(w) != s.ambient_dim:
        raise DimensionMismatchError(f"vector of length {len(w)} in ambient dimension {s.ambient_dim}")
    for row in s.vectors:
        pivot = next(i for i, x in enumerate(row) if x != 0)
        if w[pivot] != 0:
            f = w[pivot]
            for i in range(len(w)):
                w[i] -= f * row[i]
    return all(x == 0 for x in w)
