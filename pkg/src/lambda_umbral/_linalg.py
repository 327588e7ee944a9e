"""Exact dense linear algebra over Fraction, for small square matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


class SingularMatrixError(ValueError):
    pass


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def is_lower(m: Sequence[Sequence[Fraction]]) -> bool:
    return all(m[i][j] == 0 for i in range(len(m)) for j in range(i + 1, len(m)))


def is_upper(m: Sequence[Sequence[Fraction]]) -> bool:
    return all(m[i][j] == 0 for i in range(len(m)) for j in range(i))


def inverse(m: Sequence[Sequence[Fraction]]) -> Matrix:
    """Inverse by Gauss-Jordan with exact pivots; O(n^3)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + e for row, e in zip(m, identity(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError(f"matrix is singular (column {col})")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
