"""Exact evaluation of the counting polynomial P_n, its companion Q_{n-1},
and the rank thresholds derived from them.

All values are :class:`fractions.Fraction`; integers are accepted anywhere a
rational is expected.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import DomainError

Rational = Fraction


class ThresholdClass(enum.Enum):
    GUARANTEED_STABLE = "GuaranteedStable"
    GUARANTEED_SEMISTABLE = "GuaranteedSemistable"
    NO_GUARANTEE = "NoGuarantee"


@dataclass(frozen=True)
class BoundReport:
    n: int
    d: int
    p_of_d: Fraction
    threshold: Fraction
    threshold_is_integer: bool


def _check_n(n: int, minimum: int = 1) -> None:
    if not isinstance(n, int) or n < minimum:
        raise DomainError(f"n must be an integer >= {minimum}, got {n!r}")


def eval_P(n: int, t: int | Fraction) -> Fraction:
    """(t+1)(t+2)...(t+n) / n!  -- the number of degree-t monomials in n+1 variables."""
    _check_n(n)
    t = Fraction(t)
    num = Fraction(1)
    for i in range(1, n + 1):
        num *= t + i
    return num / factorial(n)


def eval_Q(n: int, t: int | Fraction) -> Fraction:
    """(P_n(t) - 1) / t; undefined at t = 0."""
    t = Fraction(t)
    if t == 0:
        raise DomainError("eval_Q is not evaluated at t = 0")
    return (eval_P(n, t) - 1) / t


def stability_threshold(n: int, d: int) -> Fraction:
    """P_n(d-1) + Q_{n-1}(d-1): b.p.f. subspaces of larger dimension are stable."""
    _check_n(n, 2)
    if d < 2:
        raise DomainError(f"threshold requires d >= 2, got d={d}")
    return eval_P(n, d - 1) + eval_Q(n, d - 1)


def classify_by_threshold(n: int, d: int, m: int) -> ThresholdClass:
    threshold = stability_threshold(n, d)
    top = eval_P(n, d)
    if not n + 1 <= m <= top:
        raise DomainError(f"m={m} outside {n + 1}..{top}")
    if m > threshold:
        return ThresholdClass.GUARANTEED_STABLE
    if m == threshold:
        return ThresholdClass.GUARANTEED_SEMISTABLE
    return ThresholdClass.NO_GUARANTEE


def flenner_gap_holds(n: int, d: int, c: int) -> bool:
    """Strict inequality Q_{n-1}(d) - Q_{n-1}(d-1) > c/d."""
    _check_n(n, 2)
    if d < 2:
        raise DomainError(f"d must be >= 2, got {d}")
    if not 1 <= c <= n - 1:
        raise DomainError(f"c must lie in 1..{n - 1}, got {c}")
    return eval_Q(n, d) - eval_Q(n, d - 1) > Fraction(c, d)


def bound_report(n: int, d: int) -> BoundReport:
    threshold = stability_threshold(n, d)
    return BoundReport(
        n=n,
        d=d,
        p_of_d=eval_P(n, d),
        threshold=threshold,
        threshold_is_integer=threshold.denominator == 1,
    )
