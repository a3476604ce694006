"""The two fixed colourings of the positive integers, plus table-driven custom ones.

``proof1`` colours n by the parity of its 2-adic order, its odd part mod 4, and
the residue mod p of its p-free part for every odd basis prime p.  ``proof2``
colours n by the parities of all its p-adic orders.  Colour tuples are packed
into a dense integer (``canonical``) by mixed radix, most significant first.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from math import prod
from pathlib import Path

from .arith import PrimeBasis
from .errors import DomainError, UsageError, checked


class Scheme(str, enum.Enum):
    PROOF1 = "proof1"
    PROOF2 = "proof2"
    CUSTOM = "custom"

    @classmethod
    def parse(cls, value) -> "Scheme":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise UsageError(f"unknown scheme {value!r}") from None


@dataclass(frozen=True)
class ColorKey:
    scheme: Scheme
    components: tuple[int, ...]
    canonical: int


def _radices(scheme: Scheme, basis: PrimeBasis) -> list[int]:
    if scheme is Scheme.PROOF1:
        return [2, 2] + [p - 1 for p in basis.odd_primes]
    if scheme is Scheme.PROOF2:
        return [2] * basis.n_primes
    raise UsageError(f"no fixed radices for scheme {scheme.value}")


def _digits(scheme: Scheme, components) -> list[int]:
    if scheme is Scheme.PROOF1:
        v2, odd4, *rest = components
        if odd4 not in (1, 3):
            raise UsageError(f"odd part mod 4 must be 1 or 3, got {odd4}")
        return [v2, (odd4 - 1) // 2] + [r - 1 for r in rest]
    return list(components)


def encode(scheme, components, basis: PrimeBasis) -> int:
    """Mixed-radix index of a colour tuple, a bijection onto [0, color_count)."""
    scheme = Scheme.parse(scheme)
    radices = _radices(scheme, basis)
    if len(components) != len(radices):
        raise UsageError(f"expected {len(radices)} components, got {len(components)}")
    digits = _digits(scheme, components)
    idx = 0
    for d, r in zip(digits, radices):
        if not 0 <= d < r:
            raise UsageError(f"component out of range in {tuple(components)}")
        idx = idx * r + d
    return idx


def decode(scheme, index: int, basis: PrimeBasis) -> tuple[int, ...]:
    scheme = Scheme.parse(scheme)
    radices = _radices(scheme, basis)
    if not 0 <= index < prod(radices):
        raise UsageError(f"colour index {index} out of range")
    digits = []
    for r in reversed(radices):
        index, d = divmod(index, r)
        digits.append(d)
    digits.reverse()
    if scheme is Scheme.PROOF1:
        return (digits[0], 2 * digits[1] + 1, *(d + 1 for d in digits[2:]))
    return tuple(digits)


def all_color_tuples(scheme, basis: PrimeBasis):
    """Every admissible colour tuple, in canonical order."""
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.PROOF1:
        ranges = [(0, 1), (1, 3)] + [range(1, p) for p in basis.odd_primes]
    else:
        ranges = [(0, 1)] * basis.n_primes
    return list(product(*ranges))


def _split(n: int, p: int) -> tuple[int, int]:
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return a, n


def proof1_components(n: int, basis: PrimeBasis) -> tuple[int, ...]:
    if n <= 0:
        raise DomainError(f"colourings are defined on positive integers, got {n}")
    if 2 not in basis:
        raise UsageError("proof1 colouring needs 2 in the basis")
    v2, odd = _split(n, 2)
    comps = [v2 % 2, odd % 4]
    for p in basis.odd_primes:
        comps.append(_split(n, p)[1] % p)
    return tuple(comps)


def proof2_components(n: int, basis: PrimeBasis) -> tuple[int, ...]:
    if n <= 0:
        raise DomainError(f"colourings are defined on positive integers, got {n}")
    return tuple(_split(n, p)[0] % 2 for p in basis)


def color_proof1(n: int, basis: PrimeBasis) -> ColorKey:
    comps = proof1_components(n, basis)
    return ColorKey(Scheme.PROOF1, comps, encode(Scheme.PROOF1, comps, basis))


def color_proof2(n: int, basis: PrimeBasis) -> ColorKey:
    comps = proof2_components(n, basis)
    return ColorKey(Scheme.PROOF2, comps, encode(Scheme.PROOF2, comps, basis))


def color_count(scheme, basis: PrimeBasis, table: "ColorTable | None" = None) -> int:
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.PROOF1:
        if 2 not in basis:
            raise UsageError("proof1 colouring needs 2 in the basis")
        return checked(4 * prod(p - 1 for p in basis.odd_primes))
    if scheme is Scheme.PROOF2:
        return checked(2**basis.n_primes)
    if table is None:
        raise UsageError("custom colour count needs a table")
    return table.n_colors


def required_size(scheme, basis: PrimeBasis) -> int:
    """Size of the monochromatic set each argument asks Folkman's theorem for."""
    scheme = Scheme.parse(scheme)
    n = basis.n_primes
    if scheme is Scheme.PROOF1:
        return n + 1
    if scheme is Scheme.PROOF2:
        return checked((n + 1) * prod(p**4 for p in basis))
    raise UsageError("required size is only defined for proof1/proof2")


class ColorTable:
    """A user-supplied colouring of [1..max_n]; anything beyond the table is rejected.

    File format: one ``n color_index`` pair per line, ``#`` comments, and an
    optional ``rule reject`` line (the only supported out-of-table rule).
    """

    def __init__(self, colors: dict[int, int], rule: str = "reject"):
        if rule != "reject":
            raise UsageError(f"unsupported out-of-table rule {rule!r}")
        for n, c in colors.items():
            if n <= 0 or c < 0:
                raise UsageError(f"bad table entry {n} {c}")
        self.colors = dict(colors)
        self.rule = rule

    @classmethod
    def load(cls, path) -> "ColorTable":
        colors = {}
        rule = "reject"
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "rule":
                if len(parts) != 2:
                    raise UsageError(f"{path}:{lineno}: expected 'rule <name>'")
                rule = parts[1]
                continue
            try:
                n, c = (int(t) for t in parts)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: expected 'n color_index'") from None
            if n in colors:
                raise UsageError(f"{path}:{lineno}: duplicate entry for {n}")
            colors[n] = c
        return cls(colors, rule)

    @property
    def n_colors(self) -> int:
        return max(self.colors.values(), default=-1) + 1

    def covers(self, bound: int) -> bool:
        return all(n in self.colors for n in range(1, bound + 1))

    def get(self, n: int):
        return self.colors.get(n)


def color_key(n: int, scheme, basis: PrimeBasis, table: ColorTable | None = None):
    """Colour of ``n`` as a ColorKey; ``None`` for custom colourings outside the table."""
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.PROOF1:
        return color_proof1(n, basis)
    if scheme is Scheme.PROOF2:
        return color_proof2(n, basis)
    if n <= 0:
        raise DomainError(f"colourings are defined on positive integers, got {n}")
    if table is None:
        raise UsageError("custom scheme needs a colour table")
    c = table.get(n)
    return None if c is None else ColorKey(Scheme.CUSTOM, (c,), c)


class Colorer:
    """Picklable n -> canonical colour index, memoised; ``None`` means "no colour"."""

    _CACHE_LIMIT = 1 << 20

    def __init__(self, scheme, basis: PrimeBasis, table: ColorTable | None = None):
        self.scheme = Scheme.parse(scheme)
        self.basis = basis
        self.table = table
        if self.scheme is Scheme.CUSTOM and table is None:
            raise UsageError("custom scheme needs a colour table")
        if self.scheme is Scheme.PROOF1 and 2 not in basis:
            raise UsageError("proof1 colouring needs 2 in the basis")
        self._cache: dict[int, int | None] = {}

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_cache"] = {}
        return state

    def _compute(self, n: int):
        if self.scheme is Scheme.CUSTOM:
            return self.table.get(n)
        if self.scheme is Scheme.PROOF1:
            comps = proof1_components(n, self.basis)
        else:
            comps = proof2_components(n, self.basis)
        return encode(self.scheme, comps, self.basis)

    def __call__(self, n: int):
        c = self._cache.get(n, -1)
        if c == -1:
            c = self._compute(n)
            if len(self._cache) < self._CACHE_LIMIT:
                self._cache[n] = c
        return c

    def key(self, n: int):
        return color_key(n, self.scheme, self.basis, self.table)
