"""JSON documents exchanged by the command-line tool.

Rationals are always strings: ``"5"``, ``"-17/2"``.  Integers are accepted on
input wherever a rational is expected.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from . import __version__
from .criterion import Status, Verdict, Witness, WitnessKind
from .errors import DomainError
from .exterior import ExteriorElement
from .monomials import Monomial, MonomialSet, parse_monomial

TOOL = "syzstab"
_RATIONAL = re.compile(r"\s*[+-]?\d+(/\d+)?\s*")


def dumps(doc: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON with lists of scalars kept on one line."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(doc, dict):
        if not doc:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {dumps(v, indent, _level + 1)}" for k, v in doc.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(doc, list):
        if all(not isinstance(x, (dict, list)) for x in doc):
            return json.dumps(doc)
        items = [pad + dumps(x, indent, _level + 1) for x in doc]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return json.dumps(doc)


def rational_str(value: Fraction | int) -> str:
    return str(Fraction(value))


def parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise DomainError(f"expected an integer or a 'p/q' string, got {value!r}")
    if isinstance(value, str) and not _RATIONAL.fullmatch(value):
        raise DomainError(f"not a rational of the form 'p/q': {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational: {value!r}") from exc


def _require(doc: Any, key: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise DomainError(f"document is missing required field {key!r}")
    return doc[key]


# -- monomial sets -----------------------------------------------------------


def monomial_set_to_doc(V: MonomialSet, label: str | None = None) -> dict:
    doc: dict[str, Any] = {"n": V.n, "monomials": V.exponent_vectors()}
    if label is not None:
        doc["label"] = label
    return doc


def monomial_set_from_doc(doc: Any) -> tuple[MonomialSet, str | None]:
    n = _require(doc, "n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"field 'n' must be a non-negative integer, got {n!r}")
    raw = _require(doc, "monomials")
    if not isinstance(raw, list):
        raise DomainError("field 'monomials' must be a list")
    monos = []
    for pos, item in enumerate(raw):
        if isinstance(item, str):
            try:
                monos.append(parse_monomial(item, n))
            except DomainError as exc:
                raise DomainError(f"monomials[{pos}]: {exc}") from None
            continue
        if not isinstance(item, list) or not all(
            isinstance(e, int) and not isinstance(e, bool) for e in item
        ):
            raise DomainError(f"monomials[{pos}] must be a list of integers or a string")
        if len(item) != n + 1:
            raise DomainError(f"monomials[{pos}] has {len(item)} exponents, expected {n + 1}")
        if any(e < 0 for e in item):
            raise DomainError(f"monomials[{pos}] has a negative exponent")
        monos.append(Monomial(tuple(item)))
    seen: dict[Monomial, int] = {}
    for pos, mono in enumerate(monos):
        if mono in seen:
            raise DomainError(f"monomials[{pos}] duplicates monomials[{seen[mono]}] ({mono})")
        seen[mono] = pos
    label = doc.get("label")
    return MonomialSet(n, monos), label


# -- verdicts ----------------------------------------------------------------


def _witness_to_doc(w: Witness) -> dict:
    out: dict[str, Any] = {"kind": w.kind.value, "lhs": rational_str(w.lhs)}
    if w.u is not None:
        out["monomial"] = list(w.u.exponents)
        out["e"] = w.u.degree
    if w.subset is not None:
        out["subset"] = list(w.subset)
    return out


def _witness_from_doc(doc: dict) -> Witness:
    kind = WitnessKind(_require(doc, "kind"))
    u = Monomial(tuple(doc["monomial"])) if "monomial" in doc else None
    subset = tuple(doc["subset"]) if "subset" in doc else None
    return Witness(kind, parse_rational(_require(doc, "lhs")), u=u, subset=subset)


def verdict_to_doc(verdict: Verdict, V: MonomialSet, label: str | None = None) -> dict:
    return {
        "tool": TOOL,
        "version": __version__,
        "input": {
            **monomial_set_to_doc(V, label),
            "m": len(V),
            "degrees": V.degrees,
        },
        "mode": verdict.mode,
        "status": verdict.status.value,
        "reference_slope": rational_str(verdict.reference_slope),
        "extremal_value": (
            None if verdict.extremal_value is None else rational_str(verdict.extremal_value)
        ),
        "vacuous": verdict.vacuous,
        "normalization": (
            None if verdict.normalization is None else list(verdict.normalization.exponents)
        ),
        "witnesses": [_witness_to_doc(w) for w in verdict.witnesses],
    }


def verdict_from_doc(doc: dict) -> Verdict:
    extremal = doc.get("extremal_value")
    norm = doc.get("normalization")
    return Verdict(
        status=Status(_require(doc, "status")),
        reference_slope=parse_rational(_require(doc, "reference_slope")),
        extremal_value=None if extremal is None else parse_rational(extremal),
        witnesses=[_witness_from_doc(w) for w in doc.get("witnesses", [])],
        mode=doc.get("mode", "equal"),
        normalization=None if norm is None else Monomial(tuple(norm)),
    )


# -- exterior elements -------------------------------------------------------


def exterior_to_doc(omega: ExteriorElement) -> dict:
    return {
        "m": omega.m,
        "r": omega.r,
        "terms": [[list(k), rational_str(v)] for k, v in sorted(omega.coeffs.items())],
    }


def exterior_from_doc(doc: Any) -> ExteriorElement:
    m, r = _require(doc, "m"), _require(doc, "r")
    terms = _require(doc, "terms")
    coeffs: dict[tuple[int, ...], Fraction] = {}
    for pos, term in enumerate(terms):
        if not isinstance(term, list) or len(term) != 2:
            raise DomainError(f"terms[{pos}] must be a pair [indices, coefficient]")
        key = tuple(term[0])
        if key in coeffs:
            raise DomainError(f"terms[{pos}] repeats index tuple {list(key)}")
        coeffs[key] = parse_rational(term[1])
    try:
        return ExteriorElement(m, r, coeffs)
    except DomainError as exc:
        raise DomainError(f"invalid exterior element: {exc}") from None


# -- 5x6 quadric subspaces ---------------------------------------------------


def matrix_from_doc(doc: Any) -> list[list[Fraction]]:
    rows = _require(doc, "rows")
    if not isinstance(rows, list):
        raise DomainError("field 'rows' must be a list of rows")
    return [[parse_rational(x) for x in row] for row in rows]


def matrix_to_doc(rows) -> dict:
    return {"rows": [[rational_str(x) for x in row] for row in rows]}
