import random
from math import gcd, prod

import pytest
import sympy
from hypothesis import given, strategies as st

from folkprimes.arith import (
    PrimeBasis,
    first_primes,
    is_prime,
    least_prime_factor,
    nu,
    smooth_part,
    valuation_profile,
    xi,
)
from folkprimes.errors import DomainError, UsageError


@pytest.mark.parametrize("count, expected", [
    (1, (2,)),
    (3, (2, 3, 5)),
    (5, (2, 3, 5, 7, 11)),
])
def test_first_primes(count, expected):
    basis = first_primes(count)
    assert basis.primes == expected
    assert basis.n_primes == count


def test_first_primes_full_range_matches_sympy():
    assert list(first_primes(32).primes) == list(sympy.primerange(2, sympy.prime(32) + 1))


@pytest.mark.parametrize("count", [0, -1, 33])
def test_first_primes_out_of_range(count):
    with pytest.raises(UsageError):
        first_primes(count)


@pytest.mark.parametrize("primes", [(3, 5), (2, 5), (2, 4), (2, 3, 3), ()])
def test_basis_must_be_initial_segment(primes):
    with pytest.raises(UsageError):
        PrimeBasis(primes)


def test_is_prime_against_sympy():
    assert [n for n in range(2000) if is_prime(n)] == list(sympy.primerange(0, 2000))


@pytest.mark.parametrize("n, p, a, x", [
    (12, 2, 2, 3),
    (12, 3, 1, 4),
    (7, 5, 0, 7),
    (8, 2, 3, 1),
])
def test_nu_xi_examples(n, p, a, x):
    assert nu(n, p) == a
    assert xi(n, p) == x


@pytest.mark.parametrize("fn", [nu, xi])
def test_zero_is_domain_error(fn):
    with pytest.raises(DomainError):
        fn(0, 2)


def test_valuation_profile_examples():
    vp = valuation_profile(20, first_primes(1))
    assert dict(vp.exponents) == {2: 2} and vp.cofactor == 5
    vp = valuation_profile(84, first_primes(3))
    assert dict(vp.exponents) == {2: 2, 3: 1, 5: 0} and vp.cofactor == 7
    vp = valuation_profile(1, first_primes(2))
    assert dict(vp.exponents) == {2: 0, 3: 0} and vp.cofactor == 1


def test_smooth_part_examples():
    assert smooth_part(20, first_primes(1)) == 4
    assert smooth_part(20, PrimeBasis((2, 3, 5))) == 20
    assert smooth_part(13, first_primes(1)) == 1


def test_profile_round_trip():
    basis = first_primes(3)
    for n in range(1, 10**5 + 1):
        vp = valuation_profile(n, basis)
        assert vp.reconstruct() == n
        assert all(vp.cofactor % p for p in basis)


@given(st.integers(1, 10**12), st.sampled_from(first_primes(10).primes))
def test_nu_matches_sympy(n, p):
    assert nu(n, p) == sympy.multiplicity(p, n)
    assert n == p ** nu(n, p) * xi(n, p)
    assert gcd(xi(n, p), p) == 1


@given(st.integers(2, 10**9))
def test_least_prime_factor(n):
    assert least_prime_factor(n) == min(sympy.factorint(n))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_lower_order_dominates_sum(p):
    rng = random.Random(p)
    done = 0
    while done < 10**4:
        a, b = rng.randint(1, 10**9), rng.randint(1, 10**9)
        if nu(a, p) == nu(b, p):
            continue
        if nu(a, p) > nu(b, p):
            a, b = b, a
        assert nu(a + b, p) == nu(a, p)
        done += 1


@given(st.lists(st.integers(0, 4), min_size=3, max_size=3), st.integers(1, 10**4))
def test_profile_exponents(exps, cof):
    basis = first_primes(3)
    n = prod(p**e for p, e in zip(basis, exps)) * cof
    vp = valuation_profile(n, basis)
    assert vp.reconstruct() == n
    assert smooth_part(n, basis) * vp.cofactor == n
