"""Brenner's combinatorial criterion for (semi)stability of monomial syzygy sheaves.

Two entry points:

* :func:`check_equal_degree` -- colon form, for monomials of one degree d:
  stable iff (dim(V:u) - 1)/(d - e) < (m - 1)/d for every monomial u of
  degree 1 <= e <= d-1 (semistable with <=).
* :func:`check_mixed` -- subset form, any degrees: stable iff for every
  index set I with 2 <= |I| <= m-1,
  (deg gcd_I - sum_{i in I} d_i)/(|I| - 1) < (-sum d_i)/(m - 1).

The two are exact reformulations of each other on equal-degree input;
:func:`cross_check` compares them.
"""

from __future__ import annotations

import enum
import itertools
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator

from .bounds import eval_P
from .errors import DomainError, ResourceLimitError
from .monomials import (
    Monomial,
    MonomialSet,
    colon_dim,
    enumerate_monomials,
    gcd_all,
    pure_powers,
    quotient,
)

DEFAULT_SUBSET_BUDGET = 20
DEFAULT_EXHAUSTIVE_GUARD = 200_000


class Status(enum.Enum):
    STABLE = "Stable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    UNSTABLE = "Unstable"

    def satisfies(self, strict: bool) -> bool:
        if strict:
            return self is Status.STABLE
        return self is not Status.UNSTABLE


class WitnessKind(enum.Enum):
    COLON_MONOMIAL = "ColonMonomial"
    SUBSET = "Subset"


@dataclass(frozen=True)
class Witness:
    kind: WitnessKind
    lhs: Fraction
    u: Monomial | None = None
    subset: tuple[int, ...] | None = None

    @property
    def e(self) -> int | None:
        return None if self.u is None else self.u.degree


@dataclass
class Verdict:
    """Outcome of a criterion check.

    ``extremal_value`` is None exactly when the check was vacuous (d = 1 for
    the colon form, m = 2 for the subset form); the status is then Stable.
    """

    status: Status
    reference_slope: Fraction
    extremal_value: Fraction | None
    witnesses: list[Witness] = field(default_factory=list)
    mode: str = "equal"
    normalization: Monomial | None = None

    @property
    def vacuous(self) -> bool:
        return self.extremal_value is None


def _compare(extremal: Fraction, reference: Fraction) -> Status:
    if extremal < reference:
        return Status.STABLE
    if extremal == reference:
        return Status.STRICTLY_SEMISTABLE
    return Status.UNSTABLE


def _proper_divisors(exps: tuple[int, ...], d: int) -> Iterator[tuple[int, ...]]:
    for div in itertools.product(*(range(e + 1) for e in exps)):
        if 0 < sum(div) < d:
            yield div


def _colon_ratio(dim: int, d: int, e: int) -> Fraction:
    return Fraction(dim - 1, d - e)


def check_equal_degree(V: MonomialSet, naive: bool = False) -> Verdict:
    """Colon-form check for a set of monomials of a single degree.

    Only monomials u dividing at least two elements of V can reach a positive
    ratio, so by default just those are visited (their colon dimensions fall
    out of a divisor count).  ``naive=True`` sweeps every monomial of every
    degree 1..d-1 instead, computing each colon dimension directly.
    """
    if V.uniform_degree is None:
        raise DomainError("check_equal_degree needs monomials of a single degree")
    m, d = len(V), V.uniform_degree
    if m < 2:
        raise DomainError(f"need at least 2 monomials, got {m}")
    reference = Fraction(m - 1, d)
    if d == 1:
        return Verdict(Status.STABLE, reference, None, [], mode="equal")

    if naive:
        scored = []
        for e in range(1, d):
            for u in enumerate_monomials(V.n, e):
                scored.append((_colon_ratio(colon_dim(V, u), d, e), u))
    else:
        counts: Counter[tuple[int, ...]] = Counter()
        for v in V:
            counts.update(_proper_divisors(v.exponents, d))
        shared = {u: c for u, c in counts.items() if c >= 2}
        # with no shared divisor every proper divisor has a one-dimensional colon
        pool = shared or counts
        scored = [
            (_colon_ratio(c, d, sum(u)), Monomial(u)) for u, c in pool.items()
        ]

    extremal = max(r for r, _ in scored)
    winners = sorted(
        (u for r, u in scored if r == extremal),
        key=lambda u: (u.degree, tuple(-x for x in u.exponents)),
    )
    witnesses = [Witness(WitnessKind.COLON_MONOMIAL, extremal, u=u) for u in winners]
    return Verdict(_compare(extremal, reference), reference, extremal, witnesses)


class _SubsetSearch:
    """Branch-and-bound maximisation of (deg gcd_I - sum_I d_i)/(|I| - 1)."""

    def __init__(
        self,
        exps: list[tuple[int, ...]],
        max_size: int,
        min_gcd_degree: int = 0,
    ):
        self.exps = exps
        self.degrees = [sum(e) for e in exps]
        self.m = len(exps)
        self.max_size = max_size
        self.min_gcd_degree = min_gcd_degree
        # tail_prefix[j][k]: sum of the k smallest degrees among indices > j
        self.tail_prefix = []
        for j in range(self.m):
            tail = sorted(self.degrees[j + 1 :])
            self.tail_prefix.append(list(itertools.accumulate(tail, initial=0)))
        self.best: Fraction | None = None
        self.winners: list[tuple[int, ...]] = []
        self.nodes = 0

    def run(self) -> None:
        for j in range(self.m):
            self._extend(j, self.exps[j], self.degrees[j], (j,))

    def _record(self, value: Fraction, members: tuple[int, ...]) -> None:
        if self.best is None or value > self.best:
            self.best = value
            self.winners = [members]
        elif value == self.best:
            self.winners.append(members)

    def _extension_bound(self, j: int, g: int, s: int, size: int) -> Fraction | None:
        # gcd degree can only fall and each added element costs its degree
        room = min(self.max_size - size, self.m - 1 - j)
        if room <= 0:
            return None
        prefix = self.tail_prefix[j]
        return max(Fraction(g - s - prefix[k], size - 1 + k) for k in range(1, room + 1))

    def _extend(self, j: int, g_exps: tuple[int, ...], s: int, members: tuple[int, ...]) -> None:
        self.nodes += 1
        size = len(members)
        g = sum(g_exps)
        if g < self.min_gcd_degree:
            return
        if size >= 2:
            self._record(Fraction(g - s, size - 1), members)
        bound = self._extension_bound(j, g, s, size)
        if bound is None or (self.best is not None and bound < self.best):
            return
        for k in range(j + 1, self.m):
            new_g = tuple(map(min, g_exps, self.exps[k]))
            self._extend(k, new_g, s + self.degrees[k], members + (k,))


def _normalize(U: MonomialSet) -> tuple[list[tuple[int, ...]], Monomial | None]:
    common = gcd_all(U)
    if common.degree == 0:
        return [u.exponents for u in U], None
    return [quotient(u, common).exponents for u in U], common


def check_mixed(U: MonomialSet, subset_budget: int = DEFAULT_SUBSET_BUDGET) -> Verdict:
    """Subset-form check for monomials of arbitrary degrees.

    A common factor is divided out first and reported as ``normalization``.
    The maximum runs over 2 <= |I| <= m-1; the full index set always yields
    exactly the reference slope once the common factor is gone, so it is
    left out of the extremal value.  Witness subsets are 0-based indices
    into the canonical order of ``U``.
    """
    m = len(U)
    if m < 2:
        raise DomainError(f"need at least 2 monomials, got {m}")
    if m > subset_budget:
        raise ResourceLimitError(
            f"{m} monomials exceed the subset budget of {subset_budget}", count=m
        )
    exps, common = _normalize(U)
    total = sum(sum(e) for e in exps)
    reference = Fraction(-total, m - 1)
    if m == 2:
        return Verdict(Status.STABLE, reference, None, [], mode="mixed", normalization=common)
    search = _SubsetSearch(exps, max_size=m - 1)
    search.run()
    extremal = search.best
    witnesses = [
        Witness(WitnessKind.SUBSET, extremal, subset=members)
        for members in sorted(search.winners)
    ]
    return Verdict(
        _compare(extremal, reference), reference, extremal, witnesses,
        mode="mixed", normalization=common,
    )


def subset_maximum(
    U: MonomialSet, min_gcd_degree: int = 0, max_size: int | None = None
) -> tuple[Fraction | None, list[tuple[int, ...]]]:
    """Maximum subset ratio restricted to subsets whose gcd has at least the given degree.

    No normalisation is applied.  Returns ``(None, [])`` when no subset qualifies.
    """
    exps = [u.exponents for u in U]
    search = _SubsetSearch(exps, max_size or len(U) - 1, min_gcd_degree)
    search.run()
    return search.best, sorted(search.winners)


def cross_check(V: MonomialSet, subset_budget: int = DEFAULT_SUBSET_BUDGET) -> bool:
    """Compare the colon form against the subset form on equal-degree input.

    The statuses must coincide.  The extremal values live on different
    scales: a colon ratio x corresponds to the subset ratio -d - 1/x.  The
    colon form only sees subsets whose gcd is a non-unit, so its extremal
    value is compared with the subset maximum over exactly those subsets
    (both absent when no two elements share a variable).
    """
    if V.uniform_degree is None:
        raise DomainError("cross_check needs monomials of a single degree")
    if gcd_all(V).degree:
        raise DomainError("cross_check needs monomials without a common factor")
    d = V.uniform_degree
    colon = check_equal_degree(V)
    subset = check_mixed(V, subset_budget)
    if colon.status is not subset.status:
        return False
    restricted, _ = subset_maximum(V, min_gcd_degree=1)
    if colon.extremal_value is None or colon.extremal_value <= 0:
        return restricted is None
    return restricted == -d - 1 / colon.extremal_value


def bpf_subsets(n: int, d: int, m: int) -> Iterator[MonomialSet]:
    """Every base-point-free m-element subset of the degree-d monomials."""
    powers = pure_powers(n, d)
    others = [u for u in enumerate_monomials(n, d) if u not in set(powers)]
    for extra in itertools.combinations(others, m - (n + 1)):
        yield MonomialSet(n, powers + list(extra))


def random_bpf_subset(n: int, d: int, m: int, rng: random.Random) -> MonomialSet:
    powers = pure_powers(n, d)
    others = [u for u in enumerate_monomials(n, d) if u not in set(powers)]
    return MonomialSet(n, powers + rng.sample(others, m - (n + 1)))


def _classify(V: MonomialSet) -> tuple[MonomialSet, Verdict]:
    return V, check_equal_degree(V)


def exhaustive_classify(
    n: int,
    d: int,
    m: int,
    guard: int = DEFAULT_EXHAUSTIVE_GUARD,
    workers: int = 1,
) -> list[tuple[MonomialSet, Verdict]]:
    """Colon-form verdict for every b.p.f. m-subset of S_d, in enumeration order."""
    top = int(eval_P(n, d))
    if not n + 1 <= m <= top:
        raise DomainError(f"m={m} outside {n + 1}..{top}")
    count = comb(top - (n + 1), m - (n + 1))
    if count > guard:
        raise ResourceLimitError(
            f"{count} b.p.f. subsets exceed the exhaustive guard of {guard}", count=count
        )
    subsets = bpf_subsets(n, d, m)
    if workers <= 1:
        return [_classify(V) for V in subsets]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_classify, subsets, chunksize=64))
