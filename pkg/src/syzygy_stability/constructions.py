"""Recursive construction of b.p.f. monomial subspaces with stable syzygy sheaves.

``construct(n, d, m, strictness)`` returns an m-element base-point-free set
of degree-d monomials in X_0..X_n whose colon-form check meets the requested
strictness, together with a trace of the rules that produced it.  Every
result is re-checked with :func:`check_equal_degree` before it is returned.

Rule identifiers recorded in traces:

=====================  =====================================================
``R3.1``               binary set X_0^d + sum_p X_0^{pc} X_1^{d-pc}
``R3.2-Case1/2/3``     two binary pieces sharing X_0^d (non-strict)
``R3.4-Case1/2/3``     parameter variants of the above meeting strict bounds
``R3.3``               S'_d + W X_2, W one degree lower
``Special-m=d+1``      R3.2 set of size d plus X_1^a X_2^b (or a fixed set)
``Special-m=2d+1``     R3.2 set of size 2d plus X_1^a X_2^b (or a fixed set)
``Exceptional-(2,2,5)``  a semistable 5-subset of S_2
``Full-S1``            all variables (d = 1)
``Thm4-Case1/2/3``     induction step on the number of variables
=====================  =====================================================
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .bounds import eval_P
from .criterion import check_equal_degree
from .errors import DomainError, ImpossibleConstructionError, VerificationError
from .monomials import Monomial, MonomialSet, enumerate_monomials, is_bpf


class Strictness(enum.Enum):
    STRICT = "strict"
    NONSTRICT = "nonstrict"

    @property
    def strict(self) -> bool:
        return self is Strictness.STRICT


@dataclass(frozen=True)
class ConstructionTrace:
    rule: str
    params: dict = field(hash=False)
    children: tuple[ConstructionTrace, ...] = ()

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "params": dict(self.params),
            "children": [c.to_dict() for c in self.children],
        }

    @classmethod
    def from_dict(cls, data: dict) -> ConstructionTrace:
        return cls(
            data["rule"],
            dict(data["params"]),
            tuple(cls.from_dict(c) for c in data.get("children", ())),
        )


def _embed(u: Monomial, n: int, variables: tuple[int, ...]) -> Monomial:
    exps = [0] * (n + 1)
    for src, dst in enumerate(variables):
        exps[dst] = u.exponents[src]
    return Monomial(tuple(exps))


def _binary_pieces(d: int, m: int, c: int) -> list[tuple[int, int]]:
    # exponent pairs (of X_0 and the second variable)
    return [(d, 0)] + [(p * c, d - p * c) for p in range(m - 1)]


def construct_n1(d: int, m: int, c: int) -> MonomialSet:
    """{X_0^d} together with X_0^{pc} X_1^{d-pc} for 0 <= p <= m-2."""
    if d < 1 or not 2 <= m <= d + 1 or c < 1 or (m - 1) * c > d:
        raise DomainError(f"need d>=1, 2<=m<=d+1, c>=1, (m-1)c<=d; got d={d} m={m} c={c}")
    return MonomialSet(1, (Monomial(p) for p in _binary_pieces(d, m, c)))


def binary_colon_maximum(V: MonomialSet) -> Fraction:
    """Largest colon ratio (dim(V:u) - 1)/(d - e) over all monomials u of degree 1..d-1."""
    verdict = check_equal_degree(V, naive=True)
    return verdict.extremal_value if verdict.extremal_value is not None else Fraction(0)


# -- n = 2 -----------------------------------------------------------------


def _two_piece_set(d: int, m1: int, m2: int, c1: int, c2: int) -> MonomialSet:
    monos = {Monomial((a, b, 0)) for a, b in _binary_pieces(d, m1, c1)}
    monos |= {Monomial((a, 0, b)) for a, b in _binary_pieces(d, m2, c2)}
    return MonomialSet(2, monos)


def _check_two_piece_relations(d: int, m: int, m1: int, m2: int, c1: int, c2: int,
                               strict: bool) -> str | None:
    """Validate the parameter relations; returns which strict form holds, if requested."""
    low = Fraction(d, m - 1)
    hi1, hi2 = Fraction(d, m1 - 1), Fraction(d, m2 - 1)
    if m - 1 != (m1 - 1) + (m2 - 1) or min(m1, m2) < 2 or min(c1, c2) < 1:
        raise VerificationError(f"size relation broken: m={m} m1={m1} m2={m2}")
    if not (low <= c1 <= hi1 and low <= c2 <= hi2):
        raise VerificationError(f"c bounds broken: d={d} m={m} c1={c1} c2={c2}")
    if not strict:
        return None
    if low < c1 < hi1 and low < c2 <= hi2:
        return "(3)"
    if low < c1 <= hi1 and low < c2 < hi2:
        return "(4)"
    raise VerificationError(f"no strict relation holds: d={d} m={m} c1={c1} c2={c2}")


def _nonstrict_two_piece_params(d: int, m: int) -> tuple[str, int, int, int, int]:
    if m <= d + 1:
        if m % 2:
            t = (m - 1) // 2
            return "R3.2-Case1", t + 1, t + 1, d // t, d // t
        t = (m - 2) // 2
        return "R3.2-Case2", t + 2, t + 1, d // (t + 1), d // t
    return "R3.2-Case3", d + 1, m - d, 1, 1


def _strict_two_piece_params(d: int, m: int) -> tuple[str, int, int, int, int]:
    if m <= d:
        if m % 2:
            t = (m - 1) // 2
            c = d // t - 1 if d % t == 0 else d // t
            return "R3.4-Case1", t + 1, t + 1, c, c
        t = (m - 2) // 2
        c2 = d // t - 1 if d % t == 0 else d // t
        return "R3.4-Case2", t + 2, t + 1, d // (t + 1), c2
    return "R3.4-Case3", d + 1, m - d, 1, 1


def _two_piece(d: int, m: int, strict: bool) -> tuple[MonomialSet, ConstructionTrace]:
    rule, m1, m2, c1, c2 = (_strict_two_piece_params if strict else _nonstrict_two_piece_params)(d, m)
    relation = _check_two_piece_relations(d, m, m1, m2, c1, c2, strict)
    params = {"n": 2, "d": d, "m": m, "m_1": m1, "m_2": m2, "c_1": c1, "c_2": c2}
    if relation:
        params["relation"] = relation
    return _two_piece_set(d, m1, m2, c1, c2), ConstructionTrace(rule, params)


_SMALL_D_PLUS_ONE = {
    # d -> extra monomial added to the size-d two-piece set (d = 2 is all squares)
    3: (1, 1, 1),
    4: (1, 1, 2),
    5: (1, 2, 2),
}

_SEVEN_CUBICS = [(3, 0, 0), (1, 2, 0), (0, 3, 0), (2, 0, 1), (1, 1, 1), (0, 1, 2), (0, 0, 3)]


def _special(d: int, m: int) -> tuple[MonomialSet, ConstructionTrace]:
    params = {"n": 2, "d": d, "m": m}
    if m == 2 * d + 1 and d == 3:
        return MonomialSet(2, _SEVEN_CUBICS), ConstructionTrace("Special-m=2d+1", params)
    if m == d + 1 and d == 2:
        return MonomialSet(2, [(2, 0, 0), (0, 2, 0), (0, 0, 2)]), ConstructionTrace(
            "Special-m=d+1", params
        )
    base, base_trace = _two_piece(d, m - 1, strict=False)
    if m == d + 1 and d in _SMALL_D_PLUS_ONE:
        extra = Monomial(_SMALL_D_PLUS_ONE[d])
    else:
        a, b = d // 2, d - d // 2
        params.update(a=a, b=b)
        extra = Monomial((0, a, b))
    params["extra"] = list(extra.exponents)
    rule = "Special-m=d+1" if m == d + 1 else "Special-m=2d+1"
    return base.union([extra]), ConstructionTrace(rule, params, (base_trace,))


def _lift_times_last(W: MonomialSet, n: int, d: int) -> MonomialSet:
    """S'_d (monomials without X_n) together with W * X_n."""
    head = [_embed(u, n, tuple(range(n))) for u in enumerate_monomials(n - 1, d)]
    last = Monomial.variable(n, n)
    return MonomialSet(n, head + [u * last for u in W])


def _n2(d: int, m: int, strictness: Strictness) -> tuple[MonomialSet, ConstructionTrace]:
    top = int(eval_P(2, d))
    if d < 1 or not 3 <= m <= top:
        raise DomainError(f"n=2 needs d>=1 and 3<=m<={top}; got d={d} m={m}")
    strict = strictness.strict
    params = {"n": 2, "d": d, "m": m}
    if d == 1:
        return MonomialSet(2, enumerate_monomials(2, 1)), ConstructionTrace("Full-S1", params)
    if (d, m) == (2, 5):
        if strict:
            raise ImpossibleConstructionError(
                "no 5-dimensional b.p.f. monomial subspace of S_2 on P^2 has a stable "
                "syzygy bundle (the exceptional case n=2, d=2, m=5); only semistable exists"
            )
        V = MonomialSet(2, [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 0, 2)])
        return V, ConstructionTrace("Exceptional-(2,2,5)", params)
    if m <= 2 * d + 1:
        if strict and m in (d + 1, 2 * d + 1):
            return _special(d, m)
        return _two_piece(d, m, strict)
    if d == 2:
        return MonomialSet(2, enumerate_monomials(2, 2)), ConstructionTrace("R3.3", params)
    l = m - d - 1
    W, child = construct_n2(d - 1, l, Strictness.NONSTRICT)
    params["l"] = l
    return _lift_times_last(W, 2, d), ConstructionTrace("R3.3", params, (child,))


@lru_cache(maxsize=None)
def _construct_n2_cached(d: int, m: int, strictness: Strictness):
    V, trace = _n2(d, m, strictness)
    _verify(V, trace, m, strictness.strict and (d, m) != (2, 5))
    return V, trace


def construct_n2(d: int, m: int, strictness: Strictness = Strictness.STRICT
                 ) -> tuple[MonomialSet, ConstructionTrace]:
    return _construct_n2_cached(d, m, Strictness(strictness))


# -- general n ---------------------------------------------------------------


def _verify(V: MonomialSet, trace: ConstructionTrace, m: int, strict: bool) -> None:
    if len(V) != m or not is_bpf(V):
        raise VerificationError(f"{trace.rule}: expected {m} monomials with all pure powers, got {V}")
    verdict = check_equal_degree(V)
    if not verdict.status.satisfies(strict):
        raise VerificationError(
            f"{trace.rule} produced {verdict.status.value} for {trace.params}: {V}"
        )


def _n_general(n: int, d: int, m: int) -> tuple[MonomialSet, ConstructionTrace]:
    params = {"n": n, "d": d, "m": m}
    if d == 1:
        return MonomialSet(n, enumerate_monomials(n, 1)), ConstructionTrace("Full-S1", params)
    below = int(eval_P(n - 1, d))
    if m <= below + 1:
        sub, child = construct(n - 1, d, m - 1, Strictness.NONSTRICT)
        head = [_embed(u, n, tuple(range(n))) for u in sub]
        V = MonomialSet(n, head + [Monomial.variable(n, n, d)])
        return V, ConstructionTrace("Thm4-Case1", params, (child,))
    if m < below + n + 1:
        l = below + n + 1 - m
        head = [_embed(u, n, tuple(range(n))) for u in enumerate_monomials(n - 1, d)]
        tail = [
            Monomial.variable(n, i, d - 1) * Monomial.variable(n, n) for i in range(l, n + 1)
        ]
        params["l"] = l
        return MonomialSet(n, head + tail), ConstructionTrace("Thm4-Case2", params)
    l = m - below
    W, child = construct(n, d - 1, l, Strictness.NONSTRICT)
    params["l"] = l
    return _lift_times_last(W, n, d), ConstructionTrace("Thm4-Case3", params, (child,))


@lru_cache(maxsize=None)
def _construct_cached(n: int, d: int, m: int, strictness: Strictness):
    if n == 1:
        c = d // (m - 1)
        V = construct_n1(d, m, c)
        trace = ConstructionTrace("R3.1", {"n": 1, "d": d, "m": m, "c": c})
        if binary_colon_maximum(V) > Fraction(1, c):
            raise VerificationError(f"R3.1 bound 1/{c} violated by {V}")
        return V, trace
    if n == 2:
        return construct_n2(d, m, strictness)
    V, trace = _n_general(n, d, m)
    _verify(V, trace, m, strict=True)
    return V, trace


def admissible_range(n: int, d: int) -> range:
    if n == 1:
        return range(2, d + 2)
    return range(n + 1, int(eval_P(n, d)) + 1)


def construct(n: int, d: int, m: int, strictness: Strictness | str = Strictness.STRICT
              ) -> tuple[MonomialSet, ConstructionTrace]:
    """An m-element b.p.f. monomial subset of S_d in n+1 variables meeting ``strictness``.

    For n >= 3 the output is always strictly stable.  For n = 1 it is the
    binary set with the largest admissible step c = floor(d/(m-1)); it is
    checked against the colon bound 1/c, not against stability.
    """
    if n < 1 or d < 1:
        raise DomainError(f"need n>=1, d>=1; got n={n} d={d}")
    rng = admissible_range(n, d)
    if m not in rng:
        raise DomainError(f"m={m} outside {rng.start}..{rng.stop - 1} for n={n}, d={d}")
    return _construct_cached(n, d, m, Strictness(strictness))


def replay(trace: ConstructionTrace) -> MonomialSet:
    """Rebuild a construction from its trace alone, without verification."""
    p = trace.params
    rule = trace.rule
    n, d, m = p["n"], p["d"], p["m"]
    if rule == "R3.1":
        return construct_n1(d, m, p["c"])
    if rule == "Full-S1":
        return enumerate_monomials(n, 1)
    if rule.startswith(("R3.2", "R3.4")):
        return _two_piece_set(d, p["m_1"], p["m_2"], p["c_1"], p["c_2"])
    if rule == "Exceptional-(2,2,5)":
        return MonomialSet(2, [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 0, 2)])
    if rule.startswith("Special"):
        if not trace.children:
            if d == 3:
                return MonomialSet(2, _SEVEN_CUBICS)
            return MonomialSet(2, [(2, 0, 0), (0, 2, 0), (0, 0, 2)])
        return replay(trace.children[0]).union([Monomial(tuple(p["extra"]))])
    if rule == "R3.3" and not trace.children:
        return enumerate_monomials(2, 2)
    if rule in ("R3.3", "Thm4-Case3"):
        return _lift_times_last(replay(trace.children[0]), n, d)
    if rule == "Thm4-Case1":
        sub = replay(trace.children[0])
        head = [_embed(u, n, tuple(range(n))) for u in sub]
        return MonomialSet(n, head + [Monomial.variable(n, n, d)])
    if rule == "Thm4-Case2":
        head = [_embed(u, n, tuple(range(n))) for u in enumerate_monomials(n - 1, d)]
        tail = [
            Monomial.variable(n, i, d - 1) * Monomial.variable(n, n)
            for i in range(p["l"], n + 1)
        ]
        return MonomialSet(n, head + tail)
    raise DomainError(f"unknown construction rule {rule!r}")
