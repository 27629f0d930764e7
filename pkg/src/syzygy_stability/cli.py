"""Command-line interface: ``syzstab <command> ...``.

Every command writes one JSON document.  Exit codes:

    0   success / Stable
    10  StrictlySemistable (secant: NotStable)
    20  Unstable
    64  usage error or invalid input (secant: V has a base point)
    70  a resource guard was exceeded
    75  the requested construction does not exist
    1   a sweep hit a construction or verification failure
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

from . import __version__
from .bounds import bound_report, classify_by_threshold, flenner_gap_holds
from .constructions import Strictness, admissible_range, construct
from .criterion import (
    DEFAULT_EXHAUSTIVE_GUARD,
    DEFAULT_SUBSET_BUDGET,
    Status,
    check_equal_degree,
    check_mixed,
    exhaustive_classify,
)
from .documents import (
    dumps,
    exterior_from_doc,
    matrix_from_doc,
    monomial_set_from_doc,
    monomial_set_to_doc,
    rational_str,
    verdict_to_doc,
)
from .errors import (
    DomainError,
    ImpossibleConstructionError,
    ResourceLimitError,
    SyzygyError,
)
from .exterior import (
    extract_index_families,
    is_decomposable,
    koszul_delta,
    recover_factors,
)
from .secant import (
    QuadricFunctional,
    SecantVerdict,
    catalecticant,
    find_linear_factor,
    functional_from_subspace,
    secant_stability_test,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_SEMISTABLE = 10
EXIT_UNSTABLE = 20
EXIT_USAGE = 64
EXIT_RESOURCE = 70
EXIT_IMPOSSIBLE = 75

STATUS_EXIT = {
    Status.STABLE: EXIT_OK,
    Status.STRICTLY_SEMISTABLE: EXIT_SEMISTABLE,
    Status.UNSTABLE: EXIT_UNSTABLE,
}
SECANT_EXIT = {
    SecantVerdict.STABLE: EXIT_OK,
    SecantVerdict.NOT_STABLE: EXIT_SEMISTABLE,
    SecantVerdict.BASE_POINT: EXIT_USAGE,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _read_json(path: str | None) -> Any:
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read JSON input: {exc}") from None


def _emit(doc: Any, output: str | None) -> None:
    text = dumps(doc) + "\n"
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- commands ----------------------------------------------------------------


def cmd_bounds(args) -> int:
    if args.n < 2 or args.d < 2:
        raise UsageError("bounds needs --n >= 2 and --d >= 2")
    report = bound_report(args.n, args.d)
    doc: dict[str, Any] = {
        "n": report.n,
        "d": report.d,
        "P_n(d)": rational_str(report.p_of_d),
        "threshold": rational_str(report.threshold),
        "threshold_is_integer": report.threshold_is_integer,
        "classification": [
            {"m": m, "class": classify_by_threshold(args.n, args.d, m).value}
            for m in range(args.n + 1, int(report.p_of_d) + 1)
        ],
    }
    if args.c is not None:
        try:
            doc["flenner_gap"] = {"c": args.c, "holds": flenner_gap_holds(args.n, args.d, args.c)}
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    _emit(doc, args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    V, label = monomial_set_from_doc(_read_json(args.input))
    mode = args.mode
    if mode == "auto":
        mode = "equal" if V.uniform_degree is not None else "mixed"
    if mode == "equal":
        verdict = check_equal_degree(V, naive=args.naive)
    else:
        verdict = check_mixed(V, subset_budget=args.subset_budget)
    _emit(verdict_to_doc(verdict, V, label), args.output)
    return STATUS_EXIT[verdict.status]


def cmd_construct(args) -> int:
    V, trace = construct(args.n, args.d, args.m, Strictness(args.require))
    verdict = check_equal_degree(V)
    doc = {
        "set": monomial_set_to_doc(V, label=f"construct n={args.n} d={args.d} m={args.m}"),
        "trace": trace.to_dict(),
        "status": verdict.status.value,
    }
    _emit(doc, args.output)
    return EXIT_OK


def _sweep_item(job: tuple[int, int, int, str]) -> dict:
    n, d, m, require = job
    row: dict[str, Any] = {"m": m}
    try:
        try:
            V, trace = construct(n, d, m, require)
            row["flag"] = None
        except ImpossibleConstructionError:
            V, trace = construct(n, d, m, Strictness.NONSTRICT)
            row["flag"] = "only semistable (exceptional case)"
        row["rule"] = trace.rule
        row["status"] = check_equal_degree(V).status.value
        row["ok"] = True
    except SyzygyError as exc:
        row.update(ok=False, error=f"{type(exc).__name__}: {exc}")
    return row


def cmd_sweep(args) -> int:
    rng = admissible_range(args.n, args.d)
    lo = args.m_min if args.m_min is not None else rng.start
    hi = args.m_max if args.m_max is not None else rng.stop - 1
    if lo < rng.start or hi >= rng.stop or lo > hi:
        raise UsageError(f"m range {lo}..{hi} not inside {rng.start}..{rng.stop - 1}")
    jobs = [(args.n, args.d, m, args.require) for m in range(lo, hi + 1)]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_sweep_item, jobs))
    else:
        rows = [_sweep_item(job) for job in jobs]
    ok = all(row["ok"] for row in rows)
    _emit({"n": args.n, "d": args.d, "require": args.require, "ok": ok, "rows": rows}, args.output)
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_exhaustive(args) -> int:
    results = exhaustive_classify(args.n, args.d, args.m, guard=args.guard, workers=args.workers)
    counts = {s.value: 0 for s in Status}
    listing = []
    for V, verdict in results:
        counts[verdict.status.value] += 1
        listing.append({"monomials": V.exponent_vectors(), "status": verdict.status.value})
    _emit(
        {"n": args.n, "d": args.d, "m": args.m, "count": len(results), "summary": counts,
         "sets": listing},
        args.output,
    )
    return EXIT_OK


def cmd_decompose(args) -> int:
    omega = exterior_from_doc(_read_json(args.input))
    if omega.is_zero():
        raise DomainError("the zero element cannot be tested")
    closed = omega.r >= 1 and koszul_delta(omega).is_zero()
    decomposable = is_decomposable(omega)
    doc: dict[str, Any] = {
        "m": omega.m,
        "r": omega.r,
        "delta_closed": closed,
        "decomposable": decomposable,
        "summary": f"delta-closed: {'yes' if closed else 'no'}, "
                   f"decomposable: {'yes' if decomposable else 'no'}",
        "factors": None,
        "families": None,
    }
    if decomposable and omega.r >= 1:
        doc["factors"] = [[rational_str(x) for x in v] for v in recover_factors(omega)]
    if decomposable and closed:
        doc["families"] = [list(I) for I in extract_index_families(omega).families]
    _emit(doc, args.output)
    return EXIT_OK


def cmd_secant(args) -> int:
    doc_in = _read_json(args.input)
    rows = None
    if isinstance(doc_in, dict) and "functional" in doc_in:
        lam = QuadricFunctional(tuple(matrix_from_doc({"rows": [doc_in["functional"]]})[0]))
    else:
        rows = matrix_from_doc(doc_in)
        lam = functional_from_subspace(rows)
    verdict = secant_stability_test(lam)
    doc: dict[str, Any] = {
        "verdict": verdict.value,
        "functional": [rational_str(v) for v in lam.values],
        "catalecticant": [[rational_str(x) for x in row] for row in catalecticant(lam)],
    }
    if rows is not None:
        f = find_linear_factor(rows)
        doc["linear_factor"] = None if f is None else [rational_str(x) for x in f]
    _emit(doc, args.output)
    return SECANT_EXIT[verdict]


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="syzstab", description="Stability of monomial syzygy bundles, exactly.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def io(p, with_input=True):
        if with_input:
            p.add_argument("--input", "-i", default="-", help="input JSON path (default stdin)")
        p.add_argument("--output", "-o", default="-", help="output path (default stdout)")

    p = sub.add_parser("bounds", help="P_n(d), the rank threshold and its classification table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c", type=int, help="also test the complete-intersection gap for codimension c")
    io(p, with_input=False)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("check", help="decide (semi)stability of a monomial set")
    p.add_argument("--mode", choices=["auto", "equal", "mixed"], default="auto")
    p.add_argument("--subset-budget", type=int, default=DEFAULT_SUBSET_BUDGET)
    p.add_argument("--naive", action="store_true", help="equal mode: sweep every monomial u")
    io(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="build a stable b.p.f. monomial subspace")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--require", choices=["strict", "nonstrict"], default="strict")
    io(p, with_input=False)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sweep", help="construct and verify for every m in a range")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m-min", type=int)
    p.add_argument("--m-max", type=int)
    p.add_argument("--require", choices=["strict", "nonstrict"], default="strict")
    p.add_argument("--workers", type=int, default=1)
    io(p, with_input=False)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("exhaustive", help="classify every b.p.f. m-subset of S_d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--guard", type=int, default=DEFAULT_EXHAUSTIVE_GUARD)
    p.add_argument("--workers", type=int, default=1)
    io(p, with_input=False)
    p.set_defaults(func=cmd_exhaustive)

    p = sub.add_parser("decompose", help="Koszul closedness, decomposability and index families")
    io(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("secant", help="stability of a 5-dim subspace of quadrics in 3 variables")
    io(p)
    p.set_defaults(func=cmd_secant)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"syzstab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ImpossibleConstructionError as exc:
        print(f"syzstab: impossible: {exc}", file=sys.stderr)
        return EXIT_IMPOSSIBLE
    except ResourceLimitError as exc:
        print(f"syzstab: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as exc:
        print(f"syzstab: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
