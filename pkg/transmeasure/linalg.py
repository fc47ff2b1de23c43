"""Exact linear algebra over the rationals.

Rows are scaled to integers and eliminated fraction-free (Bareiss style,
with content removal), so ranks and determinants are exact and entries
stay small. Shared by the zero-estimate verifier and the interpolation
determinant.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

Number = int | Fraction
Matrix = Sequence[Sequence[Number]]


def integer_row(row: Sequence[Number]) -> tuple[list[int], int]:
    """Scale a rational row to integers; returns ``(row * scale, scale)``."""
    scale = reduce(lcm, (Fraction(x).denominator for x in row), 1)
    return [int(Fraction(x) * scale) for x in row], scale


def _primitive(row: list[int]) -> list[int]:
    content = reduce(gcd, row, 0)
    if content > 1:
        return [x // content for x in row]
    return row


def _leading_index(row: Sequence[int]) -> int | None:
    for index, value in enumerate(row):
        if value:
            return index
    return None


@dataclass(frozen=True)
class RowBasis:
    """Greedy row basis: the lexicographically first maximal independent rows."""

    rank: int
    pivot_rows: tuple[int, ...]
    pivot_columns: tuple[int, ...]


def greedy_row_basis(matrix: Matrix) -> RowBasis:
    """Scan rows in order, keeping each row independent of those kept so far."""
    basis: list[tuple[int, list[int]]] = []
    pivot_rows: list[int] = []
    for row_index, raw_row in enumerate(matrix):
        row, _ = integer_row(raw_row)
        for pivot, basis_row in basis:
            if row[pivot]:
                factor, head = basis_row[pivot], row[pivot]
                row = _primitive([factor * a - head * b for a, b in zip(row, basis_row)])
        pivot = _leading_index(row)
        if pivot is None:
            continue
        # Reduce existing rows so every kept pivot column has a single nonzero.
        for index, (other_pivot, other_row) in enumerate(basis):
            if other_row[pivot]:
                factor, head = row[pivot], other_row[pivot]
                basis[index] = (
                    other_pivot,
                    _primitive([factor * a - head * b for a, b in zip(other_row, row)]),
                )
        basis.append((pivot, row))
        pivot_rows.append(row_index)
    return RowBasis(
        rank=len(basis),
        pivot_rows=tuple(pivot_rows),
        pivot_columns=tuple(pivot for pivot, _ in basis),
    )


def rank(matrix: Matrix) -> int:
    return greedy_row_basis(matrix).rank


def bareiss_determinant(matrix: Matrix) -> Fraction:
    """Exact determinant by fraction-free elimination."""
    size = len(matrix)
    if size == 0:
        return Fraction(1)
    if any(len(row) != size for row in matrix):
        raise ValueError("determinant of a non-square matrix")

    rows: list[list[int]] = []
    scale = 1
    for raw_row in matrix:
        row, row_scale = integer_row(raw_row)
        rows.append(row)
        scale *= row_scale

    sign = 1
    previous = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, size):
                if rows[i][k]:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (rows[k][k] * rows[i][j] - rows[i][k] * rows[k][j]) // previous
            rows[i][k] = 0
        previous = rows[k][k]
    return Fraction(sign * rows[size - 1][size - 1], scale)


def submatrix(
    matrix: Matrix, row_indices: Sequence[int], column_indices: Sequence[int]
) -> list[list[Number]]:
    return [[matrix[i][j] for j in column_indices] for i in row_indices]


def nullspace(matrix: Matrix, columns: int | None = None) -> list[list[Fraction]]:
    """A basis of ``{v : matrix v = 0}`` from the reduced row echelon form."""
    width = columns if columns is not None else (len(matrix[0]) if matrix else 0)
    reduced = [[Fraction(x) for x in row] for row in matrix]
    pivots: list[int] = []
    row_index = 0
    for column in range(width):
        pivot_row = next(
            (r for r in range(row_index, len(reduced)) if reduced[r][column]), None
        )
        if pivot_row is None:
            continue
        reduced[row_index], reduced[pivot_row] = reduced[pivot_row], reduced[row_index]
        head = reduced[row_index][column]
        reduced[row_index] = [x / head for x in reduced[row_index]]
        for r in range(len(reduced)):
            if r != row_index and reduced[r][column]:
                factor = reduced[r][column]
                reduced[r] = [a - factor * b for a, b in zip(reduced[r], reduced[row_index])]
        pivots.append(column)
        row_index += 1
        if row_index == len(reduced):
            break

    basis: list[list[Fraction]] = []
    for free in (c for c in range(width) if c not in pivots):
        vector = [Fraction(0)] * width
        vector[free] = Fraction(1)
        for r, pivot in enumerate(pivots):
            vector[pivot] = -reduced[r][free]
        basis.append(vector)
    return basis


def mat_vec(matrix: Matrix, vector: Sequence[Number]) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, vector)), Fraction(0)) for row in matrix]


__all__ = [
    "RowBasis",
    "bareiss_determinant",
    "greedy_row_basis",
    "integer_row",
    "mat_vec",
    "nullspace",
    "rank",
    "submatrix",
]
