"""Stability for 5-dimensional subspaces V of quadrics in three variables.

For n = 2, d = 2, m = 5 the syzygy bundle of V is semistable, and it fails
to be stable exactly when S_1 f is contained in V for some nonzero linear
form f.  Writing V as the kernel of a functional lam on S_2, that happens
exactly when the symmetric matrix M_ij = lam(X_i X_j) is singular: rank 1
means V has a base point, rank 2 puts lam on the secant variety of the
Veronese surface, rank 3 means stable.

Quadrics are coordinatised in the canonical order
X0^2, X0X1, X0X2, X1^2, X1X2, X2^2.  Everything is over the rationals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .linalg import nullspace, rank, rref
from .monomials import Monomial, MonomialSet, enumerate_monomials

QUADRIC_BASIS: tuple[Monomial, ...] = tuple(enumerate_monomials(2, 2))
_POSITION = {u: k for k, u in enumerate(QUADRIC_BASIS)}


def quadric_index(i: int, j: int) -> int:
    return _POSITION[Monomial.variable(2, i) * Monomial.variable(2, j)]


class SecantVerdict(enum.Enum):
    STABLE = "Stable"
    NOT_STABLE = "NotStable"
    BASE_POINT = "BasePoint"


@dataclass(frozen=True)
class QuadricFunctional:
    """Values of a nonzero functional on the six quadric monomials, in canonical order."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != 6:
            raise DomainError(f"a functional on S_2 needs 6 values, got {len(vals)}")
        if not any(vals):
            raise DomainError("the zero functional does not define a hyperplane")
        object.__setattr__(self, "values", vals)

    def __call__(self, i: int, j: int) -> Fraction:
        return self.values[quadric_index(i, j)]

    def scaled(self, factor) -> QuadricFunctional:
        return QuadricFunctional(tuple(Fraction(factor) * v for v in self.values))

    @classmethod
    def dual_of(cls, u: Monomial) -> QuadricFunctional:
        vals = [0] * 6
        vals[_POSITION[u]] = 1
        return cls(tuple(vals))


def _check_subspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    matrix = [[Fraction(x) for x in row] for row in rows]
    if len(matrix) != 5 or any(len(row) != 6 for row in matrix):
        raise DomainError("expected a 5x6 coefficient matrix")
    if rank(matrix) != 5:
        raise DomainError("the rows do not span a 5-dimensional subspace")
    return matrix


def subspace_from_monomials(V: MonomialSet) -> list[list[Fraction]]:
    if V.n != 2 or V.uniform_degree != 2 or len(V) != 5:
        raise DomainError("expected five quadric monomials in X0, X1, X2")
    rows = []
    for u in V:
        row = [Fraction(0)] * 6
        row[_POSITION[u]] = Fraction(1)
        rows.append(row)
    return rows


def functional_from_subspace(rows: Sequence[Sequence]) -> QuadricFunctional:
    """Generator of the annihilator of the row space, first nonzero value scaled to 1."""
    matrix = _check_subspace(rows)
    (kernel,) = nullspace(matrix, 6)
    lead = next(v for v in kernel if v)
    return QuadricFunctional(tuple(v / lead for v in kernel))


def catalecticant(lam: QuadricFunctional) -> list[list[Fraction]]:
    return [[lam(i, j) for j in range(3)] for i in range(3)]


def secant_stability_test(lam: QuadricFunctional) -> SecantVerdict:
    r = rank(catalecticant(lam))
    if r == 1:
        return SecantVerdict.BASE_POINT
    if r == 2:
        return SecantVerdict.NOT_STABLE
    return SecantVerdict.STABLE


def linear_factor_space(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the linear forms f = a0 X0 + a1 X1 + a2 X2 with X_i f in V for all i.

    Works on V directly: unknowns are a and the coordinates y_ik of each X_i f
    in the given rows, subject to X_i f = sum_k y_ik row_k coefficientwise.
    """
    matrix = _check_subspace(rows)
    ncols = 3 + 15
    equations = []
    for i in range(3):
        for b in range(6):
            eq = [Fraction(0)] * ncols
            for j in range(3):
                if quadric_index(i, j) == b:
                    eq[j] += 1
            for k in range(5):
                eq[3 + 5 * i + k] = -matrix[k][b]
            equations.append(eq)
    solutions = [sol[:3] for sol in nullspace(equations, ncols)]
    basis, _ = rref(solutions) if solutions else ([], [])
    return basis


def find_linear_factor(rows: Sequence[Sequence]) -> list[Fraction] | None:
    """Some nonzero f in S_1 with S_1 f inside V, as coefficients (a0, a1, a2), or None."""
    basis = linear_factor_space(rows)
    return basis[0] if basis else None


def has_base_point_oracle(rows: Sequence[Sequence]) -> bool:
    """V has a base point iff its linear-factor space is two-dimensional.

    A base point x gives S_1 f in V for every f vanishing at x, a plane of
    forms; conversely two independent f, g with S_1 f, S_1 g in V leave only
    the common zero of f and g unreached.
    """
    return len(linear_factor_space(rows)) == 2
