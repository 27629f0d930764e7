import json
from fractions import Fraction

import pytest

from syzygy_stability.bounds import eval_P
from syzygy_stability.constructions import (
    ConstructionTrace,
    Strictness,
    admissible_range,
    binary_colon_maximum,
    construct,
    construct_n1,
    construct_n2,
    replay,
)
from syzygy_stability.criterion import Status, check_equal_degree
from syzygy_stability.errors import DomainError, ImpossibleConstructionError
from syzygy_stability.monomials import Monomial, MonomialSet, enumerate_monomials, is_bpf

GRID = [
    (n, d, m)
    for n in range(2, 5)
    for d in range(1, 7)
    for m in range(n + 1, int(eval_P(n, d)) + 1)
    if (n, d, m) != (2, 2, 5)
]


def walk(trace):
    yield trace
    for child in trace.children:
        yield from walk(child)


@pytest.mark.parametrize("n,d,m", GRID)
def test_strict_grid(n, d, m):
    V, trace = construct(n, d, m)
    assert V.n == n and V.uniform_degree == d and len(V) == m
    assert is_bpf(V)
    assert check_equal_degree(V).status is Status.STABLE
    assert replay(trace) == V
    assert ConstructionTrace.from_dict(json.loads(json.dumps(trace.to_dict()))) == trace


def test_exception_strict_refused():
    with pytest.raises(ImpossibleConstructionError):
        construct(2, 2, 5)
    with pytest.raises(ImpossibleConstructionError):
        construct(2, 2, 5, "strict")


def test_exception_nonstrict():
    V, trace = construct(2, 2, 5, Strictness.NONSTRICT)
    assert trace.rule == "Exceptional-(2,2,5)"
    assert is_bpf(V) and len(V) == 5
    assert check_equal_degree(V).status is Status.STRICTLY_SEMISTABLE


def test_known_special_sets():
    V, trace = construct(2, 3, 7)
    assert trace.rule == "Special-m=2d+1"
    assert V == MonomialSet(
        2, [(3, 0, 0), (1, 2, 0), (0, 3, 0), (2, 0, 1), (1, 1, 1), (0, 1, 2), (0, 0, 3)]
    )
    V, trace = construct(2, 2, 3)
    assert trace.rule == "Special-m=d+1"
    assert V == MonomialSet(2, [(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    for d in range(3, 6):
        V, trace = construct(2, d, d + 1)
        assert trace.rule == "Special-m=d+1"
        assert check_equal_degree(V).status is Status.STABLE


def test_full_S2_for_m6():
    V, trace = construct(2, 2, 6)
    assert V == enumerate_monomials(2, 2)
    assert trace.rule == "R3.3"


def test_d1_is_full_linear_space():
    for n in range(2, 5):
        V, trace = construct(n, 1, n + 1)
        assert trace.rule == "Full-S1"
        assert V == enumerate_monomials(n, 1)


def test_rules_cover_all_induction_cases():
    rules = {t.rule for n, d, m in GRID for t in walk(construct(n, d, m)[1])}
    for rule in ("Thm4-Case1", "Thm4-Case2", "Thm4-Case3", "R3.3", "Special-m=d+1",
                 "Special-m=2d+1", "Full-S1"):
        assert rule in rules
    assert any(r.startswith("R3.4") for r in rules)
    assert any(r.startswith("R3.2") for r in rules)


@pytest.mark.parametrize("d", range(2, 8))
def test_two_piece_parameter_relations(d):
    for m in range(3, 2 * d + 2):
        if (d, m) == (2, 5):
            continue
        for strictness in Strictness:
            for trace in walk(construct_n2(d, m, strictness)[1]):
                if not trace.rule.startswith(("R3.2", "R3.4")):
                    continue
                p = trace.params
                dd, mm = p["d"], p["m"]
                low = Fraction(dd, mm - 1)
                assert mm - 1 == (p["m_1"] - 1) + (p["m_2"] - 1)
                assert low <= p["c_1"] <= Fraction(dd, p["m_1"] - 1)
                assert low <= p["c_2"] <= Fraction(dd, p["m_2"] - 1)
                if trace.rule.startswith("R3.4"):
                    assert p["relation"] in ("(3)", "(4)")


@pytest.mark.parametrize("d,m", [(d, m) for d in range(2, 9) for m in range(3, 2 * d + 2)])
def test_nonstrict_two_piece_semistable(d, m):
    V, _ = construct_n2(d, m, Strictness.NONSTRICT)
    assert check_equal_degree(V).status.satisfies(strict=False)


@pytest.mark.parametrize("d", range(1, 9))
def test_binary_sets(d):
    for m in range(2, d + 2):
        c = d // (m - 1)
        V = construct_n1(d, m, c)
        assert len(V) == m and is_bpf(V)
        if d > 1:
            assert binary_colon_maximum(V) <= Fraction(1, c)
        W, trace = construct(1, d, m)
        assert W == V and trace.params["c"] == c


def test_binary_colon_maximum_exact():
    # step 2 in degree 4: X0^4, X0^2X1^2, X1^4
    V = construct_n1(4, 3, 2)
    assert V == MonomialSet(1, [(4, 0), (2, 2), (0, 4)])
    assert binary_colon_maximum(V) == Fraction(1, 2)


def test_construct_n1_domain():
    with pytest.raises(DomainError):
        construct_n1(3, 3, 2)
    with pytest.raises(DomainError):
        construct_n1(3, 5, 1)


@pytest.mark.parametrize("n,d,m", [(2, 2, 2), (2, 2, 7), (3, 2, 3), (3, 2, 11), (0, 2, 2), (2, 0, 3)])
def test_out_of_range(n, d, m):
    with pytest.raises(DomainError):
        construct(n, d, m)


def test_admissible_range():
    assert admissible_range(2, 3) == range(3, 11)
    assert admissible_range(1, 3) == range(2, 5)


def test_replay_unknown_rule():
    with pytest.raises(DomainError):
        replay(ConstructionTrace("Nope", {"n": 2, "d": 2, "m": 3}))


def test_outputs_use_x_n_for_induction():
    V, trace = construct(3, 2, 5)
    assert trace.rule == "Thm4-Case1"
    assert Monomial((0, 0, 0, 2)) in V
