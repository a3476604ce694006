"""Bounded DFS for sets X in [1..B] whose whole finite-sums set is one colour.

Candidates are tried in increasing order on top of a sorted prefix, so the
first witness reached is the lexicographically least one.  The prefix is
monochromatic by induction, so only the sums created by a new candidate y
(y itself and s + y for old sums s) need a colour check.

Parallel runs split the choice of first element into contiguous chunks.  Each
chunk runs the sequential search with the full budget and records the node
count at which every witness appeared; the chunks are then replayed in order
against the global budget and limit, which reproduces the sequential result
exactly.  Non-deterministic runs take whatever finishes first and signal the
other workers to stop.
"""
from __future__ import annotations

import enum
import multiprocessing
from bisect import bisect_right
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field, replace
from typing import Any

from .arith import PrimeBasis, nu
from .colorings import ColorKey, Colorer, ColorTable, Scheme, color_key
from .errors import InvariantError, UsageError
from .finite_sums import MAX_ELEMENTS, FSState, fs_extend, fs_set

MAX_BOUND = 2**32
_STOP_POLL = 1024
# bounds up to this size get per-colour candidate lists; larger ones scan ranges
CLASS_LIST_MAX_BOUND = 2**20
_SCAN_BLOCK = 4096


class Outcome(str, enum.Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class SearchConfig:
    scheme: Scheme
    basis: PrimeBasis
    target_size: int
    bound: int
    deterministic: bool = True
    node_budget: int | None = None
    workers: int | None = None
    valuation_pruning: bool = False
    table: ColorTable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme.parse(self.scheme))
        if not 1 <= self.target_size <= MAX_ELEMENTS:
            raise UsageError(f"target size must lie in [1, {MAX_ELEMENTS}]")
        if not 1 <= self.bound <= MAX_BOUND:
            raise UsageError("bound must lie in [1, 2^32]")
        if self.node_budget is not None and self.node_budget < 0:
            raise UsageError("node budget must be non-negative")
        if self.workers is not None and self.workers < 1:
            raise UsageError("worker count must be at least 1")
        if self.scheme is Scheme.CUSTOM:
            if self.table is None:
                raise UsageError("custom scheme needs a colour table")
            if not self.table.covers(self.bound):
                raise UsageError(f"colour table does not cover [1..{self.bound}]")
        if self.valuation_pruning and self.scheme is not Scheme.PROOF1:
            raise UsageError("valuation pruning is only valid for proof1")

    def colorer(self) -> Colorer:
        return Colorer(self.scheme, self.basis, self.table)


@dataclass(frozen=True)
class Witness:
    config: SearchConfig
    elements: tuple[int, ...]
    color: ColorKey
    nodes_explored: int
    claim_report: Any = None


@dataclass
class SearchResult:
    outcome: Outcome
    witnesses: list[Witness]
    nodes_explored: int

    @property
    def witness(self) -> Witness | None:
        return self.witnesses[0] if self.witnesses else None


def find_offender(xs, scheme, basis: PrimeBasis, table: ColorTable | None = None):
    """Least member of fs(X) whose colour differs from that of min(X), or None.

    Returns ``(sum, ColorKey or None)``.  Computed from a from-scratch
    enumeration of fs(X), independent of the search's incremental path.
    """
    sums = sorted(fs_set(xs))
    if not sums:
        return None
    ref = color_key(sums[0], scheme, basis, table)
    if ref is None:
        return sums[0], None
    for s in sums[1:]:
        k = color_key(s, scheme, basis, table)
        if k != ref:
            return s, k
    return None


def is_monochromatic(xs, scheme, basis: PrimeBasis, table: ColorTable | None = None):
    """``(True, colour)`` if every finite sum of ``xs`` has one colour, else ``(False, None)``."""
    xs = list(xs)
    if not xs:
        return False, None
    if find_offender(xs, scheme, basis, table) is not None:
        return False, None
    return True, color_key(min(xs), scheme, basis, table)


class _Budget(Exception):
    pass


class _Stop(Exception):
    pass


class _Dfs:
    """Sequential search over a range of first elements."""

    def __init__(self, cfg: SearchConfig, limit: int | None, budget: int | None, stop=None):
        self.cfg = cfg
        self.color = cfg.colorer()
        self.limit = limit
        self.budget = budget
        self.stop = stop
        self.nodes = 0
        self.found: list[tuple[tuple[int, ...], int]] = []
        self.prune_primes = cfg.basis.primes if cfg.valuation_pruning else ()
        self.classes: dict = {}
        self.scanned = 0

    def _tick(self):
        if self.budget is not None and self.nodes >= self.budget:
            raise _Budget
        self.nodes += 1
        if self.stop is not None and self.nodes % _STOP_POLL == 0 and self.stop.is_set():
            raise _Stop

    def _scan(self, upto: int) -> None:
        color, classes = self.color, self.classes
        for n in range(self.scanned + 1, upto + 1):
            classes.setdefault(color(n), []).append(n)
        self.scanned = upto

    def _candidates(self, target: int, after: int, hi: int):
        """Candidates y in (after, hi] that could carry colour ``target``, ascending.

        Colour classes of [1..B] are filled in lazily, one block at a time.
        """
        if self.cfg.bound > CLASS_LIST_MAX_BOUND:
            yield from range(after + 1, hi + 1)
            return
        members = self.classes.setdefault(target, [])
        if self.scanned < after:
            self._scan(min(after, hi))
        i = bisect_right(members, after)
        while True:
            while i >= len(members) and self.scanned < hi:
                self._scan(min(hi, self.scanned + _SCAN_BLOCK))
            if i >= len(members) or members[i] > hi:
                return
            yield members[i]
            i += 1

    def _accepts(self, state: FSState, y: int, target: int) -> bool:
        color = self.color
        if color(y) != target:
            return False
        for s in state.sums:
            if color(s + y) != target:
                return False
        return True

    def _extend(self, state: FSState, target: int, used: frozenset) -> bool:
        """Returns True once the limit is reached."""
        if len(state.elements) == self.cfg.target_size:
            self.found.append((state.elements, self.nodes))
            return self.limit is not None and len(self.found) >= self.limit
        remaining = self.cfg.target_size - len(state.elements)
        hi = self.cfg.bound - remaining + 1
        for y in self._candidates(target, state.elements[-1], hi):
            if used and any((p, nu(y, p)) in used for p in self.prune_primes):
                continue
            self._tick()
            if not self._accepts(state, y, target):
                continue
            child_used = used
            if self.prune_primes:
                child_used = used | {(p, nu(y, p)) for p in self.prune_primes}
            if self._extend(fs_extend(state, y), target, child_used):
                return True
        return False

    def run(self, lo: int, hi: int) -> bool:
        """Search first elements in [lo, hi]; returns True if the budget ran out."""
        if not self.classes:
            self.scanned = max(self.scanned, lo - 1)
        try:
            for a in range(lo, min(hi, self.cfg.bound - self.cfg.target_size + 1) + 1):
                self._tick()
                target = self.color(a)
                if target is None:
                    continue
                used = frozenset((p, nu(a, p)) for p in self.prune_primes)
                if self._extend(fs_extend(FSState(), a), target, used):
                    break
        except _Budget:
            return True
        return False


_worker_stop = None


def _init_worker(stop):
    global _worker_stop
    _worker_stop = stop


def _chunk_task(cfg: SearchConfig, lo: int, hi: int, limit, budget):
    dfs = _Dfs(cfg, limit, budget, _worker_stop)
    try:
        exhausted = dfs.run(lo, hi)
    except _Stop:
        return None
    return dfs.found, dfs.nodes, exhausted


def _chunks(bound: int, n: int):
    n = max(1, min(n, bound))
    step, extra = divmod(bound, n)
    lo = 1
    for i in range(n):
        hi = lo + step - 1 + (1 if i < extra else 0)
        yield lo, hi
        lo = hi + 1


def _finish(cfg: SearchConfig, found, nodes: int, exhausted: bool) -> SearchResult:
    witnesses = []
    for elements, at in found:
        ok, color = is_monochromatic(elements, cfg.scheme, cfg.basis, cfg.table)
        if not ok:
            raise InvariantError(f"search produced a non-monochromatic set {elements}")
        witnesses.append(Witness(cfg, tuple(elements), color, at))
    if witnesses and not exhausted:
        outcome = Outcome.FOUND
    elif exhausted:
        outcome = Outcome.BUDGET_EXHAUSTED
    else:
        outcome = Outcome.NOT_FOUND
    return SearchResult(outcome, witnesses, nodes)


def _replay(results, limit, budget):
    """Merge per-chunk trajectories in chunk order under the global budget/limit."""
    found, used = [], 0
    for chunk_found, chunk_nodes, chunk_exhausted in results:
        room = None if budget is None else budget - used
        for elements, at in chunk_found:
            if room is not None and at > room:
                break
            found.append((elements, used + at))
            if limit is not None and len(found) >= limit:
                return found, used + at, False
        if room is not None and (chunk_nodes > room or chunk_exhausted):
            return found, budget, True
        used += chunk_nodes
    return found, used, False


def _run(cfg: SearchConfig, limit: int | None) -> SearchResult:
    workers = cfg.workers or 1
    if workers == 1:
        dfs = _Dfs(cfg, limit, cfg.node_budget)
        exhausted = dfs.run(1, cfg.bound)
        return _finish(cfg, dfs.found, dfs.nodes, exhausted)

    ctx = multiprocessing.get_context()
    stop = ctx.Event()
    chunks = list(_chunks(cfg.bound, workers * 4))
    with ProcessPoolExecutor(workers, mp_context=ctx, initializer=_init_worker,
                             initargs=(stop,)) as pool:
        futures = [pool.submit(_chunk_task, cfg, lo, hi, limit, cfg.node_budget)
                   for lo, hi in chunks]
        try:
            if cfg.deterministic:
                return _run_ordered(cfg, futures, limit)
            return _run_racing(cfg, futures, limit)
        finally:
            stop.set()
            for f in futures:
                f.cancel()


def _run_ordered(cfg, futures, limit):
    done = []
    for f in futures:
        done.append(f.result())
        found, nodes, exhausted = _replay(done, limit, cfg.node_budget)
        if exhausted or (limit is not None and len(found) >= limit):
            return _finish(cfg, found, nodes, exhausted)
    found, nodes, exhausted = _replay(done, limit, cfg.node_budget)
    return _finish(cfg, found, nodes, exhausted)


def _run_racing(cfg, futures, limit):
    found, nodes, exhausted = [], 0, False
    pending = set(futures)
    while pending:
        finished, pending = wait(pending, return_when=FIRST_COMPLETED)
        for f in finished:
            r = f.result()
            if r is None:
                continue
            chunk_found, chunk_nodes, chunk_exhausted = r
            found.extend((e, nodes + at) for e, at in chunk_found)
            nodes += chunk_nodes
            exhausted = exhausted or chunk_exhausted
        if limit is not None and len(found) >= limit:
            found = sorted(found)[:limit]
            return _finish(cfg, found, nodes, False)
    found.sort()
    if limit is not None:
        found = found[:limit]
    return _finish(cfg, found, nodes, exhausted and len(found) < (limit or 1))


def find_monochromatic(cfg: SearchConfig) -> SearchResult:
    """Search for one witness; lexicographically least in deterministic mode."""
    return _run(cfg, 1)


def enumerate_witnesses(cfg: SearchConfig, limit: int) -> list[Witness]:
    """Up to ``limit`` witnesses, in lexicographic order when deterministic."""
    return enumerate_search(cfg, limit).witnesses


def enumerate_search(cfg: SearchConfig, limit: int) -> SearchResult:
    if limit < 1:
        raise UsageError("limit must be at least 1")
    return _run(cfg, limit)


def attach_claims(witness: Witness, report) -> Witness:
    return replace(witness, claim_report=report)
