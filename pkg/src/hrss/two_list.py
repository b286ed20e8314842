"""Exact maximum socially stable matching when every man lists at most two women.

Phase 1 deletes pairs that no socially stable matching can contain.
Phase 2 takes a minimum-weight maximum-cardinality matching on the reduced
lists, weighting (m, w) by m's original rank on w's list.  Phase 3 moves men
from their second to their (acquainted, unmatched) first choice until no
such move remains.
"""

from __future__ import annotations

from dataclasses import dataclass

from hrss.bipartite import WeightedBipartiteGraph, min_weight_max_cardinality_matching
from hrss.model import HrssInstance, InstanceIndex, Matching, PreconditionError, matching_from_assignment


def _check(instance: HrssInstance) -> InstanceIndex:
    idx = instance.index
    if not instance.is_smiss:
        raise PreconditionError("two-list solver needs all capacities equal to 1")
    long = [idx.r_id[m] for m in range(idx.n1) if len(idx.rpref[m]) > 2]
    if long:
        raise PreconditionError(f"men with more than two women listed: {long}")
    return idx


def _phase1_cutoffs(idx: InstanceIndex) -> tuple[list[int], int]:
    """Per-woman rank cutoff after Phase 1; (m, w) survives iff rank(w, m) <= cutoff[w]."""
    cutoff = [len(lst) for lst in idx.hpref]
    deletions = 0

    def first(m: int) -> int:
        for w in idx.rpref[m]:
            if idx.hrank[w][m] <= cutoff[w]:
                return w
        return -1

    work = list(range(idx.n1 - 1, -1, -1))
    queued = [True] * idx.n1
    while work:
        m = work.pop()
        queued[m] = False
        w = first(m)
        if w == -1 or (m, w) not in idx.acq:
            continue
        rank = idx.hrank[w][m]
        if rank >= cutoff[w]:
            continue
        gone = idx.hpref[w][rank:cutoff[w]]
        cutoff[w] = rank
        deletions += len(gone)
        for k in gone:
            if not queued[k]:
                queued[k] = True
                work.append(k)
    return cutoff, deletions


def phase1_delete(instance: HrssInstance) -> HrssInstance:
    """Instance with the Phase 1 deletions applied to both sides' lists."""
    idx = _check(instance)
    cutoff, _ = _phase1_cutoffs(idx)
    gone = [
        idx.pair_ids(m, w)
        for w in range(idx.n2)
        for m in idx.hpref[w][cutoff[w]:]
    ]
    return instance.without_pairs(gone)


@dataclass
class TwoListStats:
    deletions: int = 0
    phase3_moves: int = 0


def solve_two_inf_run(instance: HrssInstance) -> tuple[Matching, TwoListStats]:
    idx = _check(instance)
    stats = TwoListStats()
    cutoff, stats.deletions = _phase1_cutoffs(idx)
    reduced = [[w for w in idx.rpref[m] if idx.hrank[w][m] <= cutoff[w]] for m in range(idx.n1)]

    g = WeightedBipartiteGraph(list(range(idx.n1)), list(range(idx.n2)))
    for m, lst in enumerate(reduced):
        for w in lst:
            g.add_edge(m, w, idx.hrank[w][m])
    mg = min_weight_max_cardinality_matching(g)

    man = [-1] * idx.n1
    woman = [-1] * idx.n2
    for m, w in mg.items():
        man[m], woman[w] = w, m

    changed = True
    while changed:
        changed = False
        for m, lst in enumerate(reduced):
            if len(lst) == 2 and man[m] == lst[1]:
                first = lst[0]
                if woman[first] == -1 and (m, first) in idx.acq:
                    woman[lst[1]] = -1
                    woman[first] = m
                    man[m] = first
                    stats.phase3_moves += 1
                    changed = True
    return matching_from_assignment(idx, man), stats


def solve_two_inf(instance: HrssInstance) -> Matching:
    """Maximum socially stable matching of a (2, inf) SMISS instance."""
    return solve_two_inf_run(instance)[0]
