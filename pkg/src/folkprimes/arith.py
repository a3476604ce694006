"""Primes, p-adic orders and smooth/coprime splitting over a finite prime basis."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt, prod
from typing import Mapping

from .errors import DomainError, UsageError, checked

MAX_BASIS = 32


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def least_prime_factor(n: int) -> int:
    """Smallest prime dividing ``n`` (n >= 2), by trial division."""
    if n < 2:
        raise DomainError(f"{n} has no prime factor")
    for p in (2, 3):
        if n % p == 0:
            return p
    i = 5
    r = isqrt(n)
    while i <= r:
        if n % i == 0:
            return i
        if n % (i + 2) == 0:
            return i + 2
        i += 6
    return n


@dataclass(frozen=True)
class PrimeBasis:
    """An initial segment 2, 3, 5, ... of the primes, standing in for "all primes"."""

    primes: tuple[int, ...]

    def __post_init__(self):
        ps = tuple(self.primes)
        object.__setattr__(self, "primes", ps)
        if not ps:
            raise UsageError("a prime basis needs at least one prime")
        if ps[0] != 2:
            raise UsageError("a prime basis must start at 2")
        for a, b in zip(ps, ps[1:]):
            if b <= a:
                raise UsageError(f"basis not strictly increasing: {ps}")
        for p in ps:
            if not is_prime(p):
                raise UsageError(f"{p} is not prime")
        # initial segment: no prime skipped between consecutive entries
        for a, b in zip(ps, ps[1:]):
            if any(is_prime(k) for k in range(a + 1, b)):
                raise UsageError(f"basis skips a prime between {a} and {b}")

    @property
    def n_primes(self) -> int:
        return len(self.primes)

    @property
    def odd_primes(self) -> tuple[int, ...]:
        return self.primes[1:]

    def __contains__(self, p) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)


def first_primes(count: int) -> PrimeBasis:
    if not 1 <= count <= MAX_BASIS:
        raise UsageError(f"prime count must lie in [1, {MAX_BASIS}], got {count}")
    out = []
    k = 2
    while len(out) < count:
        if is_prime(k):
            out.append(k)
        k += 1
    return PrimeBasis(tuple(out))


def _domain(n: int, p: int) -> DomainError:
    if n <= 0:
        return DomainError(f"p-adic order is only defined here for n >= 1, got {n}")
    return DomainError(f"not a prime: {p}")


def nu(n: int, p: int) -> int:
    """Exponent of ``p`` in ``n``."""
    if n <= 0 or p < 2:
        raise _domain(n, p)
    if n % p:
        return 0
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return a


def xi(n: int, p: int) -> int:
    """``n`` with every factor of ``p`` divided out."""
    if n <= 0 or p < 2:
        raise _domain(n, p)
    while n % p == 0:
        n //= p
    return n


@dataclass(frozen=True)
class ValuationProfile:
    n: int
    exponents: Mapping[int, int] = field(hash=False)
    cofactor: int

    @property
    def smooth(self) -> int:
        return prod(p**e for p, e in self.exponents.items())

    def reconstruct(self) -> int:
        return self.cofactor * self.smooth


def valuation_profile(n: int, basis: PrimeBasis) -> ValuationProfile:
    if n <= 0:
        raise _domain(n, 2)
    checked(n)
    exps = {}
    rest = n
    for p in basis:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        exps[p] = e
    return ValuationProfile(n=n, exponents=exps, cofactor=rest)


def smooth_part(n: int, basis: PrimeBasis) -> int:
    return n // valuation_profile(n, basis).cofactor
