"""Claim checks on witnesses and the constructive "new prime" step.

For a proof1 witness every basis prime p separates the elements by p-adic
order.  For a proof2 witness each (p, alpha) class holds at most (p^2 - 2)^2
elements, and thinning to one element per class restores separation.  On a
separated set, picking the element of least p-adic order for each p and then
adding any unpicked element leaves every basis valuation of the sum unchanged,
so the larger sum must pick up a prime outside the basis.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

from .arith import PrimeBasis, is_prime, least_prime_factor, nu, smooth_part
from .colorings import ColorTable, Scheme
from .errors import InvariantError, ShortfallError, UsageError, checked
from .search import is_monochromatic


def multiplicity_limit(p: int) -> int:
    """The sharpened bound (p^2 - 2)^2 on elements sharing one p-adic order."""
    return (p * p - 2) ** 2


def _distinct(xs) -> list[int]:
    xs = sorted(xs)
    if len(set(xs)) != len(xs) or any(x <= 0 for x in xs):
        raise UsageError(f"expected distinct positive integers, got {xs}")
    return xs


@dataclass
class DistinctValuations:
    injective: dict[int, bool]
    collisions: dict[int, list[tuple[int, int]]]

    @property
    def ok(self) -> bool:
        return all(self.injective.values())


@dataclass
class MultiplicityTable:
    counts: dict[int, dict[int, int]]
    limits: dict[int, int]
    flagged: list[tuple[int, int, int]]

    @property
    def ok(self) -> bool:
        return not self.flagged


def check_distinct_valuations(xs, basis: PrimeBasis) -> DistinctValuations:
    xs = _distinct(xs)
    injective, collisions = {}, {}
    for p in basis:
        pairs = [(a, b) for a, b in combinations(xs, 2) if nu(a, p) == nu(b, p)]
        injective[p] = not pairs
        collisions[p] = pairs
    return DistinctValuations(injective, collisions)


def check_multiplicity_bound(xs, basis: PrimeBasis) -> MultiplicityTable:
    xs = _distinct(xs)
    counts, limits, flagged = {}, {}, []
    for p in basis:
        per = defaultdict(int)
        for x in xs:
            per[nu(x, p)] += 1
        counts[p] = dict(sorted(per.items()))
        limits[p] = multiplicity_limit(p)
        flagged.extend((p, a, c) for a, c in counts[p].items() if c > limits[p])
    return MultiplicityTable(counts, limits, flagged)


@dataclass
class ClaimReport:
    scheme: Scheme
    distinct: DistinctValuations
    multiplicity: MultiplicityTable
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "distinct_valuations": {
                str(p): {"injective": ok,
                         "collisions": [list(c) for c in self.distinct.collisions[p]]}
                for p, ok in self.distinct.injective.items()
            },
            "multiplicity": {
                str(p): {"counts": {str(a): c for a, c in tbl.items()},
                         "limit": self.multiplicity.limits[p]}
                for p, tbl in self.multiplicity.counts.items()
            },
            "violations": self.violations,
            "ok": self.ok,
        }


def claim_report(xs, scheme, basis: PrimeBasis) -> ClaimReport:
    """Both checks, with violations counted against the claims the scheme promises.

    Custom colourings promise nothing, so their violation list stays empty.
    """
    scheme = Scheme.parse(scheme)
    dv = check_distinct_valuations(xs, basis)
    mt = check_multiplicity_bound(xs, basis)
    violations = []
    if scheme is Scheme.PROOF1:
        for p, pairs in dv.collisions.items():
            violations.extend({"claim": "distinct_valuations", "prime": p,
                               "elements": list(pair)} for pair in pairs)
    elif scheme is Scheme.PROOF2:
        violations.extend({"claim": "multiplicity", "prime": p, "exponent": a,
                           "count": c, "limit": multiplicity_limit(p)}
                          for p, a, c in mt.flagged)
    return ClaimReport(scheme, dv, mt, violations)


def thin(xs, basis: PrimeBasis) -> list[int]:
    """Keep the smallest element of each p-adic order class, prime by prime."""
    zs = _distinct(xs)
    for p in basis:
        kept = {}
        for z in zs:
            kept.setdefault(nu(z, p), z)
        zs = sorted(kept.values())
    return zs


def greedy_minima(zs, basis: PrimeBasis, strict: bool = True) -> list[int]:
    """For each basis prime in turn, list the element of least p-adic order if new.

    With ``strict`` the input must be separated by every basis prime; otherwise
    ties go to the smallest element.
    """
    zs = _distinct(zs)
    if not zs:
        raise UsageError("greedy selection needs a nonempty set")
    if strict:
        dv = check_distinct_valuations(zs, basis)
        if not dv.ok:
            bad = {p: c for p, c in dv.collisions.items() if c}
            raise UsageError(f"p-adic orders not distinct on {zs}: {bad}")
    picked = []
    for p in basis:
        best = min(zs, key=lambda z: (nu(z, p), z))
        if best not in picked:
            picked.append(best)
    return picked


@dataclass(frozen=True)
class ExtractionResult:
    reduced: tuple[int, ...]
    selected: tuple[int, ...]
    partial_sum: int
    extra: int
    total: int
    smooth: int
    cofactor: int
    new_prime: int

    @property
    def t(self) -> int:
        return len(self.selected)

    def to_dict(self) -> dict:
        return {
            "selected": list(self.selected),
            "partial_sum": self.partial_sum,
            "extra": self.extra,
            "total": self.total,
            "smooth": self.smooth,
            "cofactor": self.cofactor,
            "new_prime": self.new_prime,
        }


def extract(xs, scheme, basis: PrimeBasis, table: ColorTable | None = None) -> ExtractionResult:
    """Run selection and the final step on a witness and return a prime outside ``basis``.

    Raises UsageError if ``xs`` is not monochromatic, ShortfallError if the
    (thinned) set has at most N elements.
    """
    scheme = Scheme.parse(scheme)
    xs = _distinct(xs)
    mono, _ = is_monochromatic(xs, scheme, basis, table)
    if not mono:
        raise UsageError(f"{xs} is not a monochromatic witness under {scheme.value}")
    zs = xs if scheme is Scheme.PROOF1 else thin(xs, basis)
    n = basis.n_primes
    if len(zs) <= n:
        raise ShortfallError(required=n + 1, available=len(zs))
    try:
        selected = greedy_minima(zs, basis)
    except UsageError as exc:
        raise InvariantError(f"witness violates distinct valuations: {exc}") from None
    if len(selected) > n:
        raise InvariantError(f"selected {len(selected)} > N = {n} elements")
    extra = next(z for z in zs if z not in selected)
    partial = checked(sum(selected))
    total = checked(partial + extra)
    for p in basis:
        if nu(total, p) != nu(partial, p):
            raise InvariantError(
                f"adding {extra} changed the {p}-adic order of {partial} (got {total})")
    smooth = smooth_part(total, basis)
    cofactor = total // smooth
    if cofactor <= 1:
        raise InvariantError(f"{total} is {basis.primes}-smooth")
    q = least_prime_factor(cofactor)
    if not is_prime(q) or q in basis or total % q:
        raise InvariantError(f"bad extracted prime {q} from {total}")
    return ExtractionResult(tuple(zs), tuple(selected), partial, extra, total,
                            smooth, cofactor, q)


def extract_new_prime(witness) -> ExtractionResult:
    cfg = witness.config
    return extract(witness.elements, cfg.scheme, cfg.basis, cfg.table)
