"""Blocking pairs and stability predicates.

Four notions are covered: classical stability, social stability (blocking
restricted to acquainted pairs), local stability for HR+SN instances and
weak stability for SMTI instances.
"""

from __future__ import annotations

from dataclasses import dataclass

from hrss.model import HrssInstance, InvalidMatchingError, Matching, Pair, check_matching
from hrss.reductions import HrsnInstance, SmtiInstance


@dataclass(frozen=True)
class BlockingReport:
    classical: list[Pair]
    social: list[Pair]

    @property
    def socially_stable(self) -> bool:
        return not self.social

    @property
    def stable(self) -> bool:
        return not self.classical


def _blocking(instance: HrssInstance, matching: Matching, only_acquainted: bool) -> list[Pair]:
    idx = instance.index
    assign = check_matching(instance, matching)
    load = [0] * idx.n2
    worst = [0] * idx.n2
    for r, h in enumerate(assign):
        if h >= 0:
            load[h] += 1
            worst[h] = max(worst[h], idx.hrank[h][r])
    out = []
    for r in range(idx.n1):
        mine = assign[r]
        for h in idx.rpref[r]:
            if h == mine:
                break
            if only_acquainted and (r, h) not in idx.acq:
                continue
            if load[h] < idx.cap[h] or idx.hrank[h][r] < worst[h]:
                out.append(idx.pair_ids(r, h))
    return out


def classical_blocking_pairs(instance: HrssInstance, matching: Matching) -> list[Pair]:
    """Pairs blocking ``matching`` in the classical sense, in (resident, rank) order."""
    return _blocking(instance, matching, only_acquainted=False)


def social_blocking_pairs(instance: HrssInstance, matching: Matching) -> list[Pair]:
    return _blocking(instance, matching, only_acquainted=True)


def blocking_report(instance: HrssInstance, matching: Matching) -> BlockingReport:
    classical = classical_blocking_pairs(instance, matching)
    return BlockingReport(classical, [p for p in classical if p in instance.acquainted])


def is_stable(instance: HrssInstance, matching: Matching) -> bool:
    return not classical_blocking_pairs(instance, matching)


def is_socially_stable(instance: HrssInstance, matching: Matching) -> bool:
    return not social_blocking_pairs(instance, matching)


def local_blocking_pairs(hrsn: HrsnInstance, matching: Matching) -> list[Pair]:
    """Classical blocking pairs (r, h) where a friend of r is assigned to h."""
    hr = hrsn.hr
    assignees: dict[str, set[str]] = {}
    for r, h in matching.pairs:
        assignees.setdefault(h, set()).add(r)
    return [
        (r, h)
        for r, h in classical_blocking_pairs(hr, matching)
        if any(hrsn.are_friends(r, other) for other in assignees.get(h, ()))
    ]


def is_locally_stable(hrsn: HrsnInstance, matching: Matching) -> bool:
    return not local_blocking_pairs(hrsn, matching)


def smti_is_stable(smti: SmtiInstance, matching: Matching) -> bool:
    """Weak stability: a blocking pair needs strict preference on both sides."""
    partner_of_man: dict[str, str] = {}
    partner_of_woman: dict[str, str] = {}
    for m, w in matching.pairs:
        if (m, w) not in smti.acceptable:
            raise InvalidMatchingError(f"pair ({m}, {w}) is not acceptable")
        if m in partner_of_man or w in partner_of_woman:
            raise InvalidMatchingError(f"agent matched twice in pair ({m}, {w})")
        partner_of_man[m] = w
        partner_of_woman[w] = m
    for m, w in smti.acceptable:
        if partner_of_man.get(m) == w:
            continue
        cur_w = partner_of_man.get(m)
        man_wants = cur_w is None or smti.man_level(m, w) < smti.man_level(m, cur_w)
        if not man_wants:
            continue
        cur_m = partner_of_woman.get(w)
        if cur_m is None or smti.woman_rank(w, m) < smti.woman_rank(w, cur_m):
            return False
    return True
