import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzygy_stability.bounds import eval_P, stability_threshold
from syzygy_stability.criterion import (
    Status,
    WitnessKind,
    bpf_subsets,
    check_equal_degree,
    check_mixed,
    cross_check,
    exhaustive_classify,
    random_bpf_subset,
    subset_maximum,
)
from syzygy_stability.errors import DomainError, ResourceLimitError
from syzygy_stability.monomials import (
    Monomial,
    MonomialSet,
    colon_dim,
    divides,
    enumerate_monomials,
    gcd_all,
    pure_powers,
)

SEVEN_CUBICS = MonomialSet(
    2, [(3, 0, 0), (1, 2, 0), (0, 3, 0), (2, 0, 1), (1, 1, 1), (0, 1, 2), (0, 0, 3)]
)


def brute_subset_max(U):
    """Unpruned enumeration of every index set of size 2..m-1, after removing the common factor."""
    exps = [u.exponents for u in U]
    common = [min(col) for col in zip(*exps)]
    exps = [tuple(a - c for a, c in zip(e, common)) for e in exps]
    m = len(exps)
    best, winners = None, []
    for r in range(2, m):
        for I in itertools.combinations(range(m), r):
            g = sum(min(col) for col in zip(*(exps[i] for i in I)))
            value = Fraction(g - sum(sum(exps[i]) for i in I), r - 1)
            if best is None or value > best:
                best, winners = value, [I]
            elif value == best:
                winners.append(I)
    total = sum(sum(e) for e in exps)
    return best, sorted(winners), Fraction(-total, m - 1)


def brute_colon_max(V):
    d = V.uniform_degree
    values = [
        Fraction(colon_dim(V, u) - 1, d - e)
        for e in range(1, d)
        for u in enumerate_monomials(V.n, e)
    ]
    return max(values)


# -- colon form ------------------------------------------------------------------


def test_seven_cubics_is_stable():
    verdict = check_equal_degree(SEVEN_CUBICS)
    assert verdict.status is Status.STABLE
    assert verdict.reference_slope == 2
    assert verdict.extremal_value == Fraction(3, 2)


def test_full_S2_value():
    verdict = check_equal_degree(enumerate_monomials(2, 2))
    assert verdict.status is Status.STABLE
    assert verdict.extremal_value == 2
    assert verdict.reference_slope == Fraction(5, 2)
    assert [w.u for w in verdict.witnesses] == list(enumerate_monomials(2, 1))


def test_bpf_five_subsets_semistable():
    subsets = list(bpf_subsets(2, 2, 5))
    assert len(subsets) == 3
    for V in subsets:
        assert check_equal_degree(V).status is Status.STRICTLY_SEMISTABLE


def test_d_equal_one_is_vacuous():
    verdict = check_equal_degree(enumerate_monomials(3, 1))
    assert verdict.status is Status.STABLE and verdict.vacuous and not verdict.witnesses


def test_too_few_monomials():
    with pytest.raises(DomainError):
        check_equal_degree(MonomialSet(2, [(2, 0, 0)]))
    with pytest.raises(DomainError):
        check_equal_degree(MonomialSet(1, [(2, 0), (0, 1)]))


def test_pure_powers_ratio_zero_witnesses():
    V = MonomialSet(2, pure_powers(2, 3))
    verdict = check_equal_degree(V)
    assert verdict.extremal_value == 0
    # every proper divisor X_i^e, e = 1, 2
    assert len(verdict.witnesses) == 6
    assert verdict == check_equal_degree(V, naive=True)


def test_binary_full_space_strictly_semistable():
    # on the projective line the full space sits exactly on the boundary
    verdict = check_equal_degree(MonomialSet(1, [(3, 0), (2, 1), (1, 2), (0, 3)]))
    assert verdict.status is Status.STRICTLY_SEMISTABLE
    assert verdict.extremal_value == verdict.reference_slope == 1


def test_unstable_example():
    W = MonomialSet(2, [(3, 0, 0), (2, 1, 0), (2, 0, 1), (0, 3, 0), (0, 0, 3)])
    verdict = check_equal_degree(W)
    assert verdict.status is Status.UNSTABLE
    assert verdict.reference_slope == Fraction(4, 3)
    assert verdict.extremal_value == 2
    assert [w.u for w in verdict.witnesses] == [Monomial((2, 0, 0))]


@pytest.mark.parametrize("n,d", [(n, d) for n in range(2, 5) for d in range(2, 6)])
def test_full_space_stable(n, d):
    assert check_equal_degree(enumerate_monomials(n, d)).status is Status.STABLE


@st.composite
def equal_degree_sets(draw, max_n=3, max_d=4):
    n = draw(st.integers(1, max_n))
    d = draw(st.integers(1, max_d))
    allm = list(enumerate_monomials(n, d))
    chosen = draw(st.lists(st.sampled_from(allm), min_size=2, unique=True))
    return MonomialSet(n, chosen)


@settings(max_examples=200, deadline=None)
@given(equal_degree_sets())
def test_pruned_matches_naive(V):
    fast, slow = check_equal_degree(V), check_equal_degree(V, naive=True)
    assert fast.status is slow.status
    assert fast.extremal_value == slow.extremal_value
    assert fast.witnesses == slow.witnesses
    if V.uniform_degree > 1:
        assert fast.extremal_value == brute_colon_max(V)


@settings(max_examples=100, deadline=None)
@given(equal_degree_sets())
def test_colon_witness_soundness(V):
    verdict = check_equal_degree(V)
    for w in verdict.witnesses:
        assert w.kind is WitnessKind.COLON_MONOMIAL
        recomputed = Fraction(colon_dim(V, w.u) - 1, V.uniform_degree - w.e)
        assert recomputed == w.lhs == verdict.extremal_value


def test_adding_monomial_raises_reference():
    V = MonomialSet(2, pure_powers(2, 3))
    W = V.union([Monomial((1, 1, 1))])
    assert check_equal_degree(W).reference_slope > check_equal_degree(V).reference_slope


def test_threshold_consistency_sampled():
    rng = random.Random(7)
    for n, d in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
        t = stability_threshold(n, d)
        top = int(eval_P(n, d))
        for m in range(n + 1, top + 1):
            if m < t:
                continue
            for _ in range(5):
                status = check_equal_degree(random_bpf_subset(n, d, m, rng)).status
                if m > t:
                    assert status is Status.STABLE
                else:
                    assert status is not Status.UNSTABLE


# -- subset form -----------------------------------------------------------------


def test_mixed_pure_powers_stable():
    U = MonomialSet(2, pure_powers(2, 3))
    verdict = check_mixed(U)
    assert verdict.status is Status.STABLE
    for w in verdict.witnesses:
        assert gcd_all(U[i] for i in w.subset).degree == 0


@pytest.mark.parametrize("n", [1, 2])
def test_mixed_binary_quadrics_semistable(n):
    pad = (0,) * (n - 1)
    U = MonomialSet(n, [(2, 0) + pad, (1, 1) + pad, (0, 2) + pad])
    verdict = check_mixed(U)
    assert verdict.reference_slope == -3
    assert verdict.extremal_value == -3
    assert verdict.status is Status.STRICTLY_SEMISTABLE
    assert [w.subset for w in verdict.witnesses] == [(0, 1), (1, 2)]


def test_mixed_normalizes_common_factor():
    U = MonomialSet(1, [(3, 1), (1, 2), (1, 1)])
    verdict = check_mixed(U)
    assert verdict.normalization == Monomial((1, 1))
    V = MonomialSet(1, [(2, 0), (0, 1), (0, 0)])
    assert check_mixed(V).extremal_value == verdict.extremal_value


def test_mixed_two_elements_vacuous():
    verdict = check_mixed(MonomialSet(1, [(1, 0), (0, 3)]))
    assert verdict.vacuous and verdict.status is Status.STABLE


def test_mixed_budget():
    U = enumerate_monomials(2, 5)
    with pytest.raises(ResourceLimitError):
        check_mixed(U)
    with pytest.raises(ResourceLimitError):
        check_mixed(enumerate_monomials(2, 2), subset_budget=5)


@st.composite
def mixed_sets(draw):
    n = draw(st.integers(1, 3))
    vecs = draw(
        st.lists(
            st.lists(st.integers(0, 3), min_size=n + 1, max_size=n + 1).map(tuple),
            min_size=2,
            max_size=9,
            unique=True,
        )
    )
    return MonomialSet(n, vecs)


@settings(max_examples=300, deadline=None)
@given(mixed_sets())
def test_branch_and_bound_matches_brute_force(U):
    verdict = check_mixed(U)
    if len(U) == 2:
        assert verdict.vacuous
        return
    best, winners, reference = brute_subset_max(U)
    assert verdict.extremal_value == best
    assert [w.subset for w in verdict.witnesses] == winners
    assert verdict.reference_slope == reference


@settings(max_examples=100, deadline=None)
@given(mixed_sets())
def test_subset_witness_soundness(U):
    verdict = check_mixed(U)
    common = gcd_all(U).degree
    for w in verdict.witnesses:
        members = [U[i] for i in w.subset]
        g = gcd_all(members).degree - common
        value = Fraction(g - sum(u.degree - common for u in members), len(members) - 1)
        assert value == w.lhs == verdict.extremal_value


@settings(max_examples=100, deadline=None)
@given(mixed_sets(), st.integers(0, 3))
def test_subset_maximum_restriction(U, k):
    value, winners = subset_maximum(U, min_gcd_degree=k)
    for I in winners:
        assert gcd_all(U[i] for i in I).degree >= k


# -- cross-check -----------------------------------------------------------------


@pytest.mark.parametrize("d,m", [(d, m) for d in (2, 3) for m in range(3, 8) if m <= eval_P(2, d)])
def test_cross_check_exhaustive_n2(d, m):
    for V in bpf_subsets(2, d, m):
        assert cross_check(V)


def test_cross_check_random_n3():
    rng = random.Random(3)
    for _ in range(60):
        d = rng.choice([2, 3])
        m = rng.randint(4, int(eval_P(3, d)))
        assert cross_check(random_bpf_subset(3, d, m, rng))


def test_cross_check_full_S2():
    assert cross_check(enumerate_monomials(2, 2))


def test_cross_check_rejects_common_factor():
    with pytest.raises(DomainError):
        cross_check(MonomialSet(2, [(2, 0, 0), (1, 1, 0), (1, 0, 1)]))


def test_cross_check_non_bpf_without_common_factor():
    V = MonomialSet(2, [(2, 0, 0), (1, 1, 0), (0, 1, 1)])
    assert gcd_all(V).degree == 0
    assert cross_check(V)


# -- exhaustive ------------------------------------------------------------------


def test_exhaustive_225():
    results = exhaustive_classify(2, 2, 5)
    assert len(results) == 3
    assert {v.status for _, v in results} == {Status.STRICTLY_SEMISTABLE}


def test_exhaustive_226_and_223():
    (V, verdict), = exhaustive_classify(2, 2, 6)
    assert V == enumerate_monomials(2, 2) and verdict.status is Status.STABLE
    (V, verdict), = exhaustive_classify(2, 2, 3)
    assert V == MonomialSet(2, pure_powers(2, 2)) and verdict.status is Status.STABLE


def test_exhaustive_guard():
    with pytest.raises(ResourceLimitError) as info:
        exhaustive_classify(3, 3, 10, guard=100)
    assert info.value.count == 8008  # C(16, 6)
    with pytest.raises(DomainError):
        exhaustive_classify(2, 2, 7)


def test_exhaustive_parallel_matches_serial():
    serial = exhaustive_classify(2, 3, 6)
    parallel = exhaustive_classify(2, 3, 6, workers=2)
    assert [(V, v.status, v.extremal_value) for V, v in serial] == [
        (V, v.status, v.extremal_value) for V, v in parallel
    ]


def test_bpf_subsets_count_and_membership():
    subsets = list(bpf_subsets(2, 3, 5))
    assert len(subsets) == 21
    for V in subsets:
        assert all(divides(p, p) and p in V for p in pure_powers(2, 3))
