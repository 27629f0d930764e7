"""Exterior algebra of W = Q^m with the Koszul differential e_i -> 1.

Basis vectors are labelled e_1..e_m, so index tuples are 1-based throughout
this module.  Elements are stored sparsely: a dict from strictly increasing
index tuples to nonzero rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainError
from .linalg import rref

Key = tuple[int, ...]


def _sort_sign(seq: Sequence[int]) -> tuple[int, Key | None]:
    """Sign of the permutation sorting ``seq`` (0 and None on a repeated index)."""
    if len(set(seq)) != len(seq):
        return 0, None
    inversions = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


class ExteriorElement:
    """An element of the r-th exterior power of Q^m."""

    __slots__ = ("m", "r", "coeffs")

    def __init__(self, m: int, r: int, coeffs: Mapping[Sequence[int], object] | None = None):
        if m < 0 or r < 0:
            raise DomainError(f"invalid exterior power: m={m}, r={r}")
        self.m = m
        self.r = r
        store: dict[Key, Fraction] = {}
        for key, value in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != r or any(not 1 <= i <= m for i in key):
                raise DomainError(f"index tuple {key} does not fit degree {r} over {m} basis vectors")
            sign, ordered = _sort_sign(key)
            if not sign:
                continue
            store[ordered] = store.get(ordered, Fraction(0)) + sign * Fraction(value)
        self.coeffs = {k: v for k, v in store.items() if v != 0}

    @classmethod
    def basis(cls, m: int, indices: Iterable[int]) -> ExteriorElement:
        indices = tuple(indices)
        return cls(m, len(indices), {indices: 1})

    @classmethod
    def vector(cls, values: Sequence) -> ExteriorElement:
        return cls(len(values), 1, {(i + 1,): v for i, v in enumerate(values) if v})

    @classmethod
    def scalar(cls, m: int, value) -> ExteriorElement:
        return cls(m, 0, {(): value})

    def support(self) -> set[Key]:
        return set(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, key: Sequence[int]) -> Fraction:
        sign, ordered = _sort_sign(tuple(key))
        if not sign:
            return Fraction(0)
        return sign * self.coeffs.get(ordered, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.m == other.m
        return (self.m, self.r, self.coeffs) == (other.m, other.r, other.coeffs)

    def _check_same(self, other: ExteriorElement) -> None:
        if (self.m, self.r) != (other.m, other.r):
            raise DomainError("elements live in different exterior powers")

    def __add__(self, other: ExteriorElement) -> ExteriorElement:
        self._check_same(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return ExteriorElement(self.m, self.r, out)

    def __neg__(self) -> ExteriorElement:
        return ExteriorElement(self.m, self.r, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: ExteriorElement) -> ExteriorElement:
        return self + (-other)

    def __rmul__(self, scalar) -> ExteriorElement:
        s = Fraction(scalar)
        return ExteriorElement(self.m, self.r, {k: s * v for k, v in self.coeffs.items()})

    def __xor__(self, other: ExteriorElement) -> ExteriorElement:
        return wedge(self, other)

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"ExteriorElement(m={self.m}, r={self.r}, 0)"
        terms = " + ".join(
            f"{v}*e{'^e'.join(map(str, k))}" if k else str(v) for k, v in sorted(self.coeffs.items())
        )
        return f"ExteriorElement(m={self.m}, r={self.r}, {terms})"


def wedge(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    if a.m != b.m:
        raise DomainError("wedge of elements over different spaces")
    out: dict[Key, Fraction] = {}
    for ka, va in a.coeffs.items():
        for kb, vb in b.coeffs.items():
            sign, key = _sort_sign(ka + kb)
            if sign:
                out[key] = out.get(key, Fraction(0)) + sign * va * vb
    return ExteriorElement(a.m, a.r + b.r, out)


def wedge_all(elements: Iterable[ExteriorElement], m: int) -> ExteriorElement:
    result = ExteriorElement.scalar(m, 1)
    for el in elements:
        result = wedge(result, el)
    return result


def koszul_delta(omega: ExteriorElement) -> ExteriorElement:
    """e_{i_1}^...^e_{i_r} -> sum_p (-1)^(p-1) e_{i_1}^..(omit i_p)..^e_{i_r}."""
    if omega.r < 1:
        raise DomainError("the Koszul differential is defined from degree 1 up")
    out: dict[Key, Fraction] = {}
    for key, value in omega.coeffs.items():
        for p in range(len(key)):
            face = key[:p] + key[p + 1 :]
            out[face] = out.get(face, Fraction(0)) + (-value if p % 2 else value)
    return ExteriorElement(omega.m, omega.r - 1, out)


def _relevant_faces(omega: ExteriorElement) -> set[Key]:
    return {k[:p] + k[p + 1 :] for k in omega.coeffs for p in range(len(k))}


def _relevant_cofaces(omega: ExteriorElement) -> set[Key]:
    out = set()
    for k in omega.coeffs:
        for j in range(1, omega.m + 1):
            if j not in k:
                out.add(tuple(sorted(k + (j,))))
    return out


def plucker_relations(omega: ExteriorElement) -> Iterator[tuple[Key, Key, Fraction]]:
    """Yield (i, j, value) for every quadratic relation that can be nonzero.

    value = sum_p (-1)^p c_{i_1..i_{r-1} j_p} c_{j_0..(omit j_p)..j_r}; a term
    is nonzero only when i extends to, and j shrinks to, a support element.
    """
    faces = sorted(_relevant_faces(omega))
    cofaces = sorted(_relevant_cofaces(omega))
    for i in faces:
        for j in cofaces:
            total = Fraction(0)
            for p, jp in enumerate(j):
                left = omega[i + (jp,)]
                if left:
                    right = omega.coeffs.get(j[:p] + j[p + 1 :])
                    if right:
                        total += (-1) ** p * left * right
            yield i, j, total


def is_decomposable(omega: ExteriorElement) -> bool:
    """True iff omega = w_1 ^ ... ^ w_r, tested through the quadratic Plücker relations."""
    if omega.is_zero():
        raise DomainError("decomposability is only tested on nonzero elements")
    if omega.r <= 1:
        return True
    return all(value == 0 for _, _, value in plucker_relations(omega))


def contraction_vectors(omega: ExteriorElement) -> list[list[Fraction]]:
    """The vectors <omega, e*_J> for (r-1)-subsets J, as coordinate lists of length m."""
    vectors = []
    for J in sorted(_relevant_faces(omega)):
        vec = [omega[(j,) + J] for j in range(1, omega.m + 1)]
        if any(vec):
            vectors.append(vec)
    return vectors


def contraction_span(omega: ExteriorElement) -> list[list[Fraction]]:
    """Echelon basis of the span of all contractions of omega."""
    if omega.r == 0:
        return []
    basis, _ = rref(contraction_vectors(omega))
    return basis


def recover_factors(omega: ExteriorElement) -> list[list[Fraction]]:
    """Vectors w_1..w_r (length-m coordinate lists) whose wedge is a nonzero multiple of omega."""
    if omega.is_zero():
        raise DomainError("the zero element has no factorization")
    if omega.r == 0:
        return []
    basis = contraction_span(omega)
    if len(basis) != omega.r:
        raise DomainError(
            f"not decomposable: contractions span dimension {len(basis)}, degree is {omega.r}"
        )
    return basis


def wedge_of_vectors(vectors: Sequence[Sequence], m: int) -> ExteriorElement:
    return wedge_all((ExteriorElement.vector(list(v)) for v in vectors), m)


@dataclass(frozen=True)
class IndexFamilies:
    families: tuple[tuple[int, ...], ...]

    @property
    def s(self) -> int:
        return len(self.families)

    def delta_product(self, m: int) -> ExteriorElement:
        """delta(e_{I_1}) ^ ... ^ delta(e_{I_s})."""
        return wedge_all((koszul_delta(ExteriorElement.basis(m, I)) for I in self.families), m)

    def conclusion_failures(self, omega: ExteriorElement) -> list[str]:
        """Reasons the families fail the extraction conclusion for omega (empty if none)."""
        problems = []
        flat = [i for I in self.families for i in I]
        if len(flat) != len(set(flat)):
            problems.append("families are not mutually disjoint")
        if any(len(I) < 2 for I in self.families):
            problems.append("a family has fewer than two indices")
        if len(flat) != omega.r + self.s:
            problems.append(f"cardinalities sum to {len(flat)}, expected r+s={omega.r + self.s}")
        if not problems and not self.delta_product(omega.m).support() <= omega.support():
            problems.append("support of the delta product is not inside Supp(omega)")
        return problems


def extract_index_families(omega: ExteriorElement) -> IndexFamilies:
    """Disjoint index sets I_1..I_s with Supp(omega) containing Supp(prod delta(e_{I_q})).

    Follows the elimination argument: bring a factorization to reduced echelon
    form w'_p = e_{i_p} + sum_{j > i_p, j non-pivot} a_pj e_j, let j_p be the
    least j with a_pj != 0, and group each distinct j with the pivots that
    chose it.  The result depends on the factorization; it is not canonical.
    """
    if omega.is_zero():
        raise DomainError("omega must be nonzero")
    if omega.r == 0:
        raise DomainError("omega must have degree at least 1")
    if not koszul_delta(omega).is_zero():
        raise DomainError("omega is not closed under the Koszul differential")
    if not is_decomposable(omega):
        raise DomainError("omega is not decomposable")
    rows, pivots = rref(recover_factors(omega))
    pivot_set = set(pivots)
    chosen: dict[int, list[int]] = {}
    for row, i_p in zip(rows, pivots):
        j_p = next(
            (j for j in range(i_p + 1, omega.m) if j not in pivot_set and row[j] != 0), None
        )
        if j_p is None:
            raise DomainError("echelon row with vanishing Koszul image has no off-pivot entry")
        chosen.setdefault(j_p, []).append(i_p)
    families = tuple(
        tuple(sorted(x + 1 for x in [j] + chosen[j])) for j in sorted(chosen)
    )
    return IndexFamilies(families)


def _disjoint_families(universe: tuple[int, ...], r: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    # families listed by increasing least element, sizes >= 2, sizes summing to r + s
    def rec(available: tuple[int, ...], budget: int, acc: tuple):
        # budget = r minus sum of (|I| - 1) used so far
        if budget == 0:
            yield acc
            return
        for lead_pos, lead in enumerate(available):
            rest = available[lead_pos + 1 :]
            for extra in range(1, budget + 1):
                for others in itertools.combinations(rest, extra):
                    fam = (lead,) + others
                    remaining = tuple(x for x in rest if x not in others)
                    yield from rec(remaining, budget - extra, acc + (fam,))

    yield from rec(universe, r, ())


def search_index_families(omega: ExteriorElement) -> IndexFamilies | None:
    """Exhaustive search for families meeting the extraction conclusion; None if none exist."""
    universe = tuple(range(1, omega.m + 1))
    for fams in _disjoint_families(universe, omega.r):
        candidate = IndexFamilies(fams)
        if not candidate.conclusion_failures(omega):
            return candidate
    return None
