"""Classical stable matchings (resident-proposing extended Gale-Shapley)."""

from __future__ import annotations

import heapq
from collections import deque
from typing import Collection, Iterable

from hrss.model import HrssInstance, InstanceIndex, Matching, Pair, matching_from_assignment


def gale_shapley(idx: InstanceIndex, removed: Collection[tuple[int, int]] = ()) -> list[int]:
    """Resident-proposing GS on index form, skipping ``removed`` (r, h) pairs.

    Returns the resident -> hospital assignment (-1 when unmatched).
    """
    assign = [-1] * idx.n1
    cursor = [0] * idx.n1
    # per hospital: max-heap on rank of current assignees
    held: list[list[tuple[int, int]]] = [[] for _ in range(idx.n2)]
    free = deque(range(idx.n1))
    while free:
        r = free.popleft()
        prefs = idx.rpref[r]
        while cursor[r] < len(prefs):
            h = prefs[cursor[r]]
            cursor[r] += 1
            if removed and (r, h) in removed:
                continue
            rank = idx.hrank[h][r]
            if len(held[h]) < idx.cap[h]:
                heapq.heappush(held[h], (-rank, r))
                assign[r] = h
                break
            worst_rank, worst = -held[h][0][0], held[h][0][1]
            if rank < worst_rank:
                heapq.heapreplace(held[h], (-rank, r))
                assign[r] = h
                assign[worst] = -1
                free.append(worst)
                break
    return assign


def stable_matching(instance: HrssInstance) -> Matching:
    """A classically stable matching; the social graph is ignored."""
    idx = instance.index
    return matching_from_assignment(idx, gale_shapley(idx))


def stable_matching_on_subinstance(instance: HrssInstance, removed_pairs: Iterable[Pair]) -> Matching:
    """Stable matching of ``instance`` with ``removed_pairs`` deleted from both lists."""
    idx = instance.index
    removed = set()
    for r, h in removed_pairs:
        i, j = idx.r_of[r], idx.h_of[h]
        if j not in idx.rrank[i]:
            raise ValueError(f"({r}, {h}) is not an acceptable pair")
        removed.add((i, j))
    return matching_from_assignment(idx, gale_shapley(idx, removed))
