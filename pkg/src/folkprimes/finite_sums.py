"""Finite-sums sets: every sum of a nonempty subset of X, each element used once."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import INT_MAX, IntOverflowError, UsageError

MAX_ELEMENTS = 24


def _validate(xs) -> list[int]:
    xs = list(xs)
    if len(set(xs)) != len(xs):
        raise UsageError(f"elements must be distinct: {xs}")
    if any(x <= 0 for x in xs):
        raise UsageError(f"elements must be positive: {xs}")
    if len(xs) > MAX_ELEMENTS:
        raise UsageError(f"at most {MAX_ELEMENTS} elements supported, got {len(xs)}")
    if sum(xs) > INT_MAX:
        raise IntOverflowError(f"total {sum(xs)} exceeds the 64-bit signed range")
    return xs


def fs_set(xs) -> set[int]:
    """Brute-force fs(X) by enumerating every nonempty subset."""
    xs = _validate(xs)
    return {sum(c) for k in range(1, len(xs) + 1) for c in combinations(xs, k)}


@dataclass(frozen=True)
class FSState:
    """A set X with its finite-sums set kept alongside.

    Extension returns a new state; the old one is never mutated, so a DFS can
    backtrack by simply dropping the child.
    """

    elements: tuple[int, ...] = ()
    sums: frozenset[int] = frozenset()
    total: int = 0

    @classmethod
    def of(cls, xs) -> "FSState":
        state = cls()
        for x in sorted(_validate(xs)):
            state = fs_extend(state, x)
        return state

    def __len__(self):
        return len(self.elements)


def _check_new(state: FSState, y: int) -> None:
    if y <= 0:
        raise UsageError(f"elements must be positive, got {y}")
    if y in state.elements:
        raise UsageError(f"{y} is already an element")
    if len(state.elements) >= MAX_ELEMENTS:
        raise UsageError(f"at most {MAX_ELEMENTS} elements supported")
    if state.total + y > INT_MAX:
        raise IntOverflowError(f"total {state.total + y} exceeds the 64-bit signed range")


def delta_sums(state: FSState, y: int) -> set[int]:
    """The sums introduced by adding ``y``: {y} together with s + y for old sums s.

    May overlap ``state.sums``.
    """
    _check_new(state, y)
    out = {s + y for s in state.sums}
    out.add(y)
    return out


def fs_extend(state: FSState, y: int) -> FSState:
    new = delta_sums(state, y)
    elements = tuple(sorted(state.elements + (y,)))
    return FSState(elements, state.sums | new, state.total + y)
