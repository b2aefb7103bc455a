"""Exact integer matrices: arithmetic, determinants, Smith normal form.

Everything here works over Python's arbitrary-precision integers.  Smith
normal form intermediates routinely outgrow machine words, so there is no
fixed-width fast path anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class IntMatrix:
    """Dense matrix of exact integers, immutable after construction."""

    __slots__ = ("_data", "rows", "cols")

    def __init__(self, rows_data: Iterable[Sequence[int]]):
        data = []
        for row in rows_data:
            out = []
            for value in row:
                if isinstance(value, bool) or not isinstance(value, int):
                    raise ValueError(f"matrix entries must be integers, got {value!r}")
                out.append(value)
            data.append(tuple(out))
        if not data or not data[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ValueError("matrix rows must all have the same length")
        self._data = tuple(data)
        self.rows = len(data)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self._data == other._data

    def __hash__(self) -> int:
        return hash(self._data)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(row) for row in self._data]})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("matrix dimensions do not match")
        cols = list(zip(*other._data))
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._data]
        )

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product over the integers."""
        if len(vector) != self.cols:
            raise ValueError("vector length does not match matrix width")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self._data)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self._data)))

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self._data]


@dataclass(frozen=True)
class SmithDecomposition:
    """Factorization U * A * V = D with U, V unimodular and D diagonal.

    The diagonal is nonnegative, each entry divides the next nonzero one,
    and zeros trail.  ``diagonal`` lists the min(rows, cols) entries of D.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    diagonal: tuple[int, ...]


def determinant(matrix: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if matrix.rows != matrix.cols:
        raise ValueError("determinant requires a square matrix")
    n = matrix.rows
    a = matrix.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def unimodular_check(matrix: IntMatrix) -> bool:
    """True iff the matrix is square with determinant +1 or -1."""
    if matrix.rows != matrix.cols:
        raise ValueError("unimodularity is only defined for square matrices")
    return determinant(matrix) in (1, -1)


def content(vector: Iterable[int]) -> int:
    """gcd of the absolute values of the entries; 0 for the zero vector."""
    g = 0
    for x in vector:
        g = gcd(g, x)
    return g


def smith_normal_form(matrix: IntMatrix) -> SmithDecomposition:
    """Smith normal form with both transformation matrices.

    Uses gcd-pivot reduction: repeatedly move a minimal-magnitude nonzero
    entry of the trailing block to the pivot, clear its row and column by
    exact division steps, and fold rows back in until the pivot divides the
    whole remaining block.  All row operations are mirrored on U and all
    column operations on V, so U @ A @ V == D exactly (checked before
    returning).
    """
    m, n = matrix.rows, matrix.cols
    a = matrix.to_lists()
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, q: int) -> None:
        # row[dst] += q * row[src]
        asrc, adst = a[src], a[dst]
        for k in range(n):
            adst[k] += q * asrc[k]
        usrc, udst = u[src], u[dst]
        for k in range(m):
            udst[k] += q * usrc[k]

    def add_col(src: int, dst: int, q: int) -> None:
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for k in range(min(m, n)):
        while True:
            pivot_pos = None
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    e = a[i][j]
                    if e and (best is None or abs(e) < best):
                        best = abs(e)
                        pivot_pos = (i, j)
            if pivot_pos is None:
                break  # trailing block is zero
            if pivot_pos[0] != k:
                swap_rows(k, pivot_pos[0])
            if pivot_pos[1] != k:
                swap_cols(k, pivot_pos[1])
            pivot = a[k][k]
            dirty = False
            for i in range(k + 1, m):
                if a[i][k]:
                    add_row(k, i, -(a[i][k] // pivot))
                    if a[i][k]:
                        dirty = True  # remainder beat the pivot; re-pivot
            for j in range(k + 1, n):
                if a[k][j]:
                    add_col(k, j, -(a[k][j] // pivot))
                    if a[k][j]:
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(k + 1, m):
                row = a[i]
                if any(row[j] % pivot for j in range(k + 1, n)):
                    offender = i
                    break
            if offender is None:
                break
            add_row(offender, k, 1)  # drags the non-multiple into row k

        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            u[k] = [-x for x in u[k]]

    diagonal = tuple(a[k][k] for k in range(min(m, n)))
    U, D, V = IntMatrix(u), IntMatrix(a), IntMatrix(v)
    if (U @ matrix) @ V != D:
        raise RuntimeError("internal error: transform identity U*A*V == D failed")
    return SmithDecomposition(U=U, D=D, V=V, diagonal=diagonal)
