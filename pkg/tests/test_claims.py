import pytest
import sympy
from hypothesis import given, strategies as st

from folkprimes.arith import first_primes, nu
from folkprimes.claims import (
    check_distinct_valuations,
    check_multiplicity_bound,
    claim_report,
    extract,
    extract_new_prime,
    greedy_minima,
    multiplicity_limit,
    thin,
)
from folkprimes.errors import ShortfallError, UsageError
from folkprimes.search import SearchConfig, enumerate_witnesses, find_monochromatic
from oracle import oracle_greedy

B1, B2, B3 = first_primes(1), first_primes(2), first_primes(3)


def test_distinct_valuation_examples():
    assert check_distinct_valuations([1, 4, 16], B1).injective == {2: True}
    dv = check_distinct_valuations([1, 3, 12], B1)
    assert dv.injective == {2: False} and dv.collisions[2] == [(1, 3)]
    assert check_distinct_valuations([6], B2).ok


def test_multiplicity_examples():
    assert check_multiplicity_bound([1, 3, 12], B1).counts == {2: {0: 2, 2: 1}}
    assert check_multiplicity_bound([1, 3, 12], B1).ok
    assert check_multiplicity_bound([1], B1).counts == {2: {0: 1}}
    mt = check_multiplicity_bound([1, 3, 5, 7, 9], B1)
    assert mt.counts == {2: {0: 5}} and mt.flagged == [(2, 0, 5)]


def test_multiplicity_limit_values():
    assert [multiplicity_limit(p) for p in (2, 3, 5)] == [4, 49, 529]
    assert all(multiplicity_limit(p) < p**4 for p in (2, 3, 5, 7))


@pytest.mark.parametrize("xs, basis, expected", [
    ([1, 3, 12], B1, [1, 12]),
    ([1, 4, 16], B1, [1, 4, 16]),
    ([2, 6, 18], B2, [2]),
])
def test_thin_examples(xs, basis, expected):
    assert thin(xs, basis) == expected


@pytest.mark.parametrize("zs, basis, expected", [
    ([1, 4, 16], B1, [1]),
    ([1, 12], B1, [1]),
])
def test_greedy_examples(zs, basis, expected):
    assert greedy_minima(zs, basis) == expected


def test_greedy_tie_break_matches_oracle():
    # {6, 10, 45} is not separated by 2 or 5, so strict mode refuses it
    with pytest.raises(UsageError):
        greedy_minima([6, 10, 45], B3)
    expected = oracle_greedy([6, 10, 45], [2, 3, 5])
    assert expected == [45, 10, 6]
    assert greedy_minima([6, 10, 45], B3, strict=False) == expected


@given(st.sets(st.integers(1, 10**6), min_size=1, max_size=12), st.integers(1, 4))
def test_thin_then_greedy(xs, k):
    basis = first_primes(k)
    zs = thin(xs, basis)
    assert set(zs) <= xs
    assert check_distinct_valuations(zs, basis).ok
    picked = greedy_minima(zs, basis)
    assert picked == oracle_greedy(zs, list(basis))
    assert len(picked) <= k
    for p in basis:
        assert min(nu(z, p) for z in zs) == min(nu(a, p) for a in picked)


@pytest.mark.parametrize("xs, scheme, expected", [
    ([1, 4, 16], "proof1", dict(selected=(1,), extra=4, total=5, smooth=1, cofactor=5,
                                new_prime=5)),
    ([1, 3, 12], "proof2", dict(reduced=(1, 12), selected=(1,), extra=12, total=13,
                                new_prime=13)),
    ([4, 16, 64], "proof1", dict(selected=(4,), extra=16, total=20, smooth=4, cofactor=5,
                                 new_prime=5)),
])
def test_extract_examples(xs, scheme, expected):
    res = extract(xs, scheme, B1)
    for k, v in expected.items():
        assert getattr(res, k) == v


def test_extract_from_witness():
    w = find_monochromatic(SearchConfig("proof1", B1, 3, 64)).witness
    assert extract_new_prime(w).new_prime == 5


def test_extract_rejects_non_witness():
    with pytest.raises(UsageError):
        extract([1, 2, 4], "proof1", B1)


def test_extract_shortfall():
    with pytest.raises(ShortfallError) as info:
        extract([1, 4, 63], "proof2", B2)
    assert (info.value.required, info.value.available) == (3, 1)


def test_claim_report_violations_depend_on_scheme():
    assert claim_report([1, 3, 12], "proof2", B1).ok
    bad = claim_report([1, 3, 12], "proof1", B1)
    assert bad.violations == [{"claim": "distinct_valuations", "prime": 2, "elements": [1, 3]}]
    assert not claim_report([1, 3, 5, 7, 9], "proof2", B1).ok
    assert claim_report([1, 3, 5, 7, 9], "custom", B1).ok


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("size", [2, 3, 4])
def test_claims_on_proof1_witnesses(k, size):
    basis = first_primes(k)
    for w in enumerate_witnesses(SearchConfig("proof1", basis, size, 3000), 60):
        assert claim_report(w.elements, "proof1", basis).ok
        if size > k:
            res = extract_new_prime(w)
            assert sympy.isprime(res.new_prime) and res.new_prime not in basis
            assert res.total % res.new_prime == 0


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("size", [2, 3, 4])
def test_proof2_never_three_with_same_two_adic_order(k, size):
    basis = first_primes(k)
    for w in enumerate_witnesses(SearchConfig("proof2", basis, size, 3000), 60):
        report = claim_report(w.elements, "proof2", basis)
        assert report.ok
        assert max(report.multiplicity.counts[2].values()) <= 2
