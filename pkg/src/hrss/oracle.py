"""Exponential-time ground truth for small instances.

All searches enumerate resident -> (hospital | unmatched) assignments in
resident order, respecting capacities.  The socially-stable searches prune
with an exact rule: once resident r is placed, every acquainted h that r
would prefer must end up full with every assignee ranked above r.  Leaves
are re-checked with the verifier.
"""

from __future__ import annotations

import math
import os
from itertools import combinations
from typing import Iterator

from hrss.model import HrssError, HrssInstance, InstanceIndex, Matching, matching_from_assignment
from hrss.reductions import SimpleGraph
from hrss.verification import is_socially_stable, is_stable

LIMIT_ENV = "HRSS_BRUTE_LIMIT"
DEFAULT_LIMIT = 10**7


class LimitExceededError(HrssError):
    pass


def default_limit() -> int:
    value = os.environ.get(LIMIT_ENV)
    return int(value) if value else DEFAULT_LIMIT


def search_space(instance: HrssInstance) -> int:
    """Product over residents of (list length + 1)."""
    return math.prod(len(instance.resident_prefs[r]) + 1 for r in instance.residents)


def _check_limit(instance: HrssInstance, limit: int | None) -> None:
    limit = default_limit() if limit is None else limit
    space = search_space(instance)
    if space > limit:
        raise LimitExceededError(f"search space {space} exceeds limit {limit}")


def enumerate_matchings(instance: HrssInstance, limit: int | None = None) -> Iterator[Matching]:
    """Every matching of the instance (no stability filter)."""
    _check_limit(instance, limit)
    idx = instance.index
    assign = [-1] * idx.n1
    load = [0] * idx.n2

    def rec(r: int) -> Iterator[Matching]:
        if r == idx.n1:
            yield matching_from_assignment(idx, assign)
            return
        for h in idx.rpref[r]:
            if load[h] < idx.cap[h]:
                load[h] += 1
                assign[r] = h
                yield from rec(r + 1)
                assign[r] = -1
                load[h] -= 1
        yield from rec(r + 1)

    yield from rec(0)


class _StableSearch:
    """DFS over assignments that can still be completed without a blocking pair.

    ``need[h]`` is the strict rank threshold every assignee of h must beat;
    when it is finite, h must also be full at the leaf.
    """

    def __init__(self, idx: InstanceIndex, blockers: set[tuple[int, int]]):
        self.idx = idx
        self.blockers = blockers
        self.assign = [-1] * idx.n1
        self.load = [0] * idx.n2
        self.worst = [0] * idx.n2
        self.need = [math.inf] * idx.n2

    def _impose(self, r: int, choice: int) -> list[tuple[int, float]] | None:
        """Tighten thresholds for blockers r prefers to ``choice``; None if violated."""
        idx = self.idx
        undo = []
        for h in idx.rpref[r]:
            if h == choice:
                break
            if (r, h) not in self.blockers:
                continue
            rank = idx.hrank[h][r]
            if rank < self.need[h]:
                if self.worst[h] >= rank:
                    self._undo(undo)
                    return None
                undo.append((h, self.need[h]))
                self.need[h] = rank
                # enough later residents must still be able to fill h
                room = idx.cap[h] - self.load[h]
                if room:
                    avail = sum(1 for x in idx.hpref[h][: rank - 1] if x > r)
                    if avail < room:
                        self._undo(undo)
                        return None
        return undo

    def _undo(self, undo: list[tuple[int, float]]) -> None:
        for h, old in reversed(undo):
            self.need[h] = old

    def _leaf_ok(self) -> bool:
        idx = self.idx
        return all(self.need[h] == math.inf or self.load[h] == idx.cap[h] for h in range(idx.n2))

    def run(self, maximize: bool = False) -> Iterator[list[int]]:
        """Yield complete assignments; when maximizing, only ones larger than the last yielded."""
        idx = self.idx
        assign, load, worst = self.assign, self.load, self.worst
        self.best = -1

        def rec(r: int, size: int) -> Iterator[list[int]]:
            if maximize and size + (idx.n1 - r) <= self.best:
                return
            if r == idx.n1:
                if self._leaf_ok():
                    if maximize:
                        self.best = size
                    yield list(assign)
                return
            for h in idx.rpref[r]:
                rank = idx.hrank[h][r]
                if load[h] >= idx.cap[h] or rank >= self.need[h]:
                    continue
                undo = self._impose(r, h)
                if undo is None:
                    continue
                old_worst = worst[h]
                load[h] += 1
                worst[h] = max(old_worst, rank)
                assign[r] = h
                yield from rec(r + 1, size + 1)
                assign[r] = -1
                worst[h] = old_worst
                load[h] -= 1
                self._undo(undo)
            undo = self._impose(r, -1)
            if undo is not None:
                yield from rec(r + 1, size)
                self._undo(undo)

        yield from rec(0, 0)


def _socially_stable_assignments(instance: HrssInstance, limit: int | None, blockers_all: bool) -> Iterator[Matching]:
    _check_limit(instance, limit)
    idx = instance.index
    blockers = {(r, h) for r in range(idx.n1) for h in idx.rpref[r]} if blockers_all else set(idx.acq)
    for assign in _StableSearch(idx, blockers).run():
        yield matching_from_assignment(idx, assign)


def enumerate_socially_stable(instance: HrssInstance, limit: int | None = None) -> Iterator[Matching]:
    """Every socially stable matching."""
    for m in _socially_stable_assignments(instance, limit, blockers_all=False):
        assert is_socially_stable(instance, m)
        yield m


def enumerate_stable_matchings(instance: HrssInstance, limit: int | None = None) -> list[Matching]:
    """Every classically stable matching."""
    out = list(_socially_stable_assignments(instance, limit, blockers_all=True))
    for m in out:
        assert is_stable(instance, m)
    return out


def max_socially_stable_bruteforce(
    instance: HrssInstance, limit: int | None = None, prune: bool = True
) -> Matching:
    """A largest socially stable matching.

    With ``prune=False`` every matching is enumerated and filtered with the
    verifier; that mode exists to cross-check the pruned search.
    """
    if not prune:
        best = Matching()
        for m in enumerate_matchings(instance, limit):
            if len(m) > len(best) and is_socially_stable(instance, m):
                best = m
        return best
    _check_limit(instance, limit)
    idx = instance.index
    found = None
    for assign in _StableSearch(idx, set(idx.acq)).run(maximize=True):
        found = assign
    if found is None:
        raise AssertionError("oracle found no socially stable matching")
    best = matching_from_assignment(idx, found)
    if not is_socially_stable(instance, best):
        raise AssertionError("oracle produced an unstable matching")
    return best


def max_independent_set_bruteforce(g: SimpleGraph) -> int:
    """Independence number by subset enumeration, largest subsets first."""
    n = len(g.vertices)
    if n > 20:
        raise LimitExceededError(f"{n} vertices is too many for subset enumeration")
    for size in range(n, 0, -1):
        for subset in combinations(g.vertices, size):
            if all(frozenset(p) not in g.edges for p in combinations(subset, 2)):
                return size
    return 0
