"""Exact rational matrices: rank and nullspace by fraction-free elimination."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = ["QMatrix", "rank", "kernel_basis", "rref", "primitive_row"]

QVector = tuple[Fraction, ...]


class QMatrix:
    """A rectangular matrix of rationals (immutable by convention)."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        rows = [tuple(Fraction(x) for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError(f"row of length {len(r)} in a matrix with {ncols} columns")
        self.rows: tuple[QVector, ...] = tuple(rows)
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __eq__(self, other):
        if isinstance(other, QMatrix):
            return self.ncols == other.ncols and self.rows == other.rows
        return NotImplemented

    def __repr__(self):
        return f"QMatrix({self.nrows}x{self.ncols})"

    def apply(self, v: Sequence) -> QVector:
        if len(v) != self.ncols:
            raise ValueError("vector length does not match the column count")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows)

    def stack(self, other: "QMatrix") -> "QMatrix":
        if other.ncols != self.ncols:
            raise ValueError("cannot stack matrices with different column counts")
        return QMatrix(self.rows + other.rows, self.ncols)

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> list[QVector]:
        return kernel_basis(self)


def _integer_rows(M: QMatrix) -> list[list[int]]:
    out = []
    for r in M.rows:
        den = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * den) for x in r])
    return out


def _bareiss(M: QMatrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (rows, pivot columns)."""
    A = [row[:] for row in _integer_rows(M)]
    m, n = len(A), M.ncols
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, m):
            a = A[i][c]
            row_i = A[i]
            row_r = A[r]
            for k in range(c, n):
                row_i[k] = (piv * row_i[k] - a * row_r[k]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: QMatrix) -> int:
    return len(_bareiss(M)[1])


def rref(M: QMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    E, pivots = _bareiss(M)
    R = [[Fraction(x) for x in row] for row in E]
    for r, c in enumerate(pivots):
        p = R[r][c]
        R[r] = [x / p for x in R[r]]
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        for i in range(r):
            f = R[i][c]
            if f:
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
    return R, pivots


def kernel_basis(M: QMatrix) -> list[QVector]:
    """Basis of ``{v : M v = 0}`` in reduced echelon form.

    Stacked as rows, the returned vectors form the reduced row echelon
    matrix of the kernel, ordered by pivot column.
    """
    n = M.ncols
    R, pivots = rref(M)
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    raw = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -R[r][f]
        raw.append(v)
    if not raw:
        return []
    K, _ = rref(QMatrix(raw, n))
    return [tuple(row) for row in K]


def primitive_row(v: Sequence[Fraction]) -> QVector:
    """Scale to a primitive integer vector with positive leading entry."""
    v = [Fraction(x) for x in v]
    nz = [x for x in v if x]
    if not nz:
        return tuple(v)
    den = lcm(*(x.denominator for x in nz))
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if nz[0] < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)
