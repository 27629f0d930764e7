"""Monomials in X_0..X_n and finite sets of them.

Monomials are exponent vectors.  The canonical order is graded lexicographic
with X_0 > X_1 > ... > X_n, largest first; every set, listing and witness
report uses it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .errors import DomainError


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]
    degree: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        exps = tuple(int(e) for e in self.exponents)
        if not exps:
            raise DomainError("a monomial needs at least one variable")
        if any(e < 0 for e in exps):
            raise DomainError(f"negative exponent in {exps}")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "degree", sum(exps))

    @property
    def nvars(self) -> int:
        return len(self.exponents)

    def sort_key(self) -> tuple:
        return (self.degree, self.exponents)

    def __lt__(self, other: Monomial) -> bool:
        # "smaller" means later in the canonical (descending) listing
        return self.sort_key() < other.sort_key()

    def __mul__(self, other: Monomial) -> Monomial:
        _same_ring(self, other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __str__(self) -> str:
        parts = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                parts.append(f"X{i}")
            elif e > 1:
                parts.append(f"X{i}^{e}")
        return "*".join(parts) if parts else "1"

    @classmethod
    def one(cls, n: int) -> Monomial:
        return cls((0,) * (n + 1))

    @classmethod
    def variable(cls, n: int, i: int, power: int = 1) -> Monomial:
        exps = [0] * (n + 1)
        exps[i] = power
        return cls(tuple(exps))


def _same_ring(a: Monomial, b: Monomial) -> None:
    if a.nvars != b.nvars:
        raise DomainError(f"monomials live in different rings: {a} vs {b}")


def gcd(a: Monomial, b: Monomial) -> Monomial:
    _same_ring(a, b)
    return Monomial(tuple(min(x, y) for x, y in zip(a.exponents, b.exponents)))


def gcd_all(monomials: Iterable[Monomial]) -> Monomial:
    return reduce(gcd, monomials)


def lcm(a: Monomial, b: Monomial) -> Monomial:
    _same_ring(a, b)
    return Monomial(tuple(max(x, y) for x, y in zip(a.exponents, b.exponents)))


def divides(u: Monomial, w: Monomial) -> bool:
    _same_ring(u, w)
    return all(x <= y for x, y in zip(u.exponents, w.exponents))


def quotient(w: Monomial, u: Monomial) -> Monomial:
    if not divides(u, w):
        raise DomainError(f"{u} does not divide {w}")
    return Monomial(tuple(y - x for x, y in zip(u.exponents, w.exponents)))


_TERM = re.compile(r"^X(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, n: int) -> Monomial:
    """Parse ``"X0^2*X1"`` style input (``"1"`` is the unit) in n+1 variables."""
    exps = [0] * (n + 1)
    text = text.replace(" ", "")
    if text in ("", "1"):
        return Monomial(tuple(exps))
    for factor in text.split("*"):
        match = _TERM.match(factor)
        if not match:
            raise DomainError(f"cannot parse factor {factor!r} in {text!r}")
        i = int(match.group(1))
        if i > n:
            raise DomainError(f"variable X{i} out of range for n={n}")
        exps[i] += int(match.group(2) or 1)
    return Monomial(tuple(exps))


def _compositions(parts: int, total: int) -> Iterator[tuple[int, ...]]:
    # lexicographically decreasing
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(parts - 1, total - first):
            yield (first,) + rest


class MonomialSet(Sequence[Monomial]):
    """A finite set of distinct monomials in n+1 variables, canonically ordered."""

    __slots__ = ("n", "monomials", "uniform_degree", "_index")

    def __init__(self, n: int, monomials: Iterable[Monomial | Sequence[int] | str]):
        if n < 0:
            raise DomainError(f"n must be non-negative, got {n}")
        items = []
        for pos, mono in enumerate(monomials):
            if isinstance(mono, str):
                mono = parse_monomial(mono, n)
            elif not isinstance(mono, Monomial):
                mono = Monomial(tuple(mono))
            if mono.nvars != n + 1:
                raise DomainError(
                    f"monomial #{pos} has {mono.nvars} exponents, expected {n + 1}"
                )
            items.append(mono)
        if len(set(items)) != len(items):
            seen: set[Monomial] = set()
            for pos, mono in enumerate(items):
                if mono in seen:
                    raise DomainError(f"monomial #{pos} ({mono}) is a duplicate")
                seen.add(mono)
        items.sort(reverse=True)
        self.n = n
        self.monomials: tuple[Monomial, ...] = tuple(items)
        degrees = {u.degree for u in items}
        self.uniform_degree: int | None = degrees.pop() if len(degrees) == 1 else None
        self._index = {u: i for i, u in enumerate(items)}

    def __len__(self) -> int:
        return len(self.monomials)

    def __getitem__(self, i):
        return self.monomials[i]

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.monomials)

    def __contains__(self, u: object) -> bool:
        return u in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialSet):
            return NotImplemented
        return self.n == other.n and self.monomials == other.monomials

    def __hash__(self) -> int:
        return hash((self.n, self.monomials))

    def __repr__(self) -> str:
        return f"MonomialSet(n={self.n}, [{', '.join(map(str, self.monomials))}])"

    def index(self, u: Monomial) -> int:  # type: ignore[override]
        return self._index[u]

    @property
    def degrees(self) -> list[int]:
        return [u.degree for u in self.monomials]

    def union(self, other: Iterable[Monomial]) -> MonomialSet:
        return MonomialSet(self.n, set(self.monomials) | set(other))

    def exponent_vectors(self) -> list[list[int]]:
        return [list(u.exponents) for u in self.monomials]


def enumerate_monomials(n: int, e: int) -> MonomialSet:
    """All monomials of degree e in X_0..X_n."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if e < 0:
        raise DomainError(f"degree must be >= 0, got {e}")
    return MonomialSet(n, (Monomial(c) for c in _compositions(n + 1, e)))


def pure_powers(n: int, d: int) -> list[Monomial]:
    return [Monomial.variable(n, i, d) for i in range(n + 1)]


def _require_uniform(V: MonomialSet) -> int:
    if V.uniform_degree is None:
        raise DomainError("operation requires monomials of a single degree")
    return V.uniform_degree


def is_bpf(V: MonomialSet) -> bool:
    """Base point free: V contains every pure power X_i^d."""
    d = _require_uniform(V)
    return all(p in V for p in pure_powers(V.n, d))


def colon_dim(V: MonomialSet, u: Monomial) -> int:
    """dim (V:u) = number of v in V divisible by u."""
    d = _require_uniform(V)
    if not 1 <= u.degree <= d - 1:
        raise DomainError(f"colon degree e={u.degree} outside 1..{d - 1}")
    return sum(1 for v in V if divides(u, v))
