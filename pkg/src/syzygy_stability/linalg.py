"""Row reduction over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped.

    Pivots are chosen left to right, so the pivot columns are the
    lexicographically least set of independent columns.
    """
    a = to_matrix(rows)
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        lead = a[r][col]
        a[r] = [x / lead for x in a[r]]
        support = [(j, y) for j, y in enumerate(a[r]) if y]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                row = a[i]
                for j, y in support:
                    row[j] -= f * y
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of {x : A x = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def det(rows: Sequence[Sequence]) -> Fraction:
    a = to_matrix(rows)
    size = len(a)
    result = Fraction(1)
    for col in range(size):
        pivot = next((i for i in range(col, size) if a[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        result *= a[col][col]
        for i in range(col + 1, size):
            f = a[i][col] / a[col][col]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return result
