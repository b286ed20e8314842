"""3/2-approximation for maximum socially stable matchings.

Men propose in the style of extended Gale-Shapley.  A man who runs out of
women while unmatched is promoted once and proposes again from the top of
his remaining list; promotion lifts him above unpromoted unacquainted men
in every woman's eyes.  A proposal along an acquainted pair deletes every
man the woman ranks below the proposer, whether or not she accepts.

Deletions only ever remove a suffix of a woman's list, so they are stored
as a per-woman rank cutoff: (m, w) is deleted iff rank(w, m) > cutoff[w].
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field
from typing import Callable

from hrss.model import HrssInstance, InstanceIndex, Matching, PreconditionError, matching_from_assignment
from hrss.reductions import clone, unclone

TraceFn = Callable[[str, dict], None]


class SuitorComparison(enum.Enum):
    LESS = "less"  # first man is preferred (m_i precedes m_k for w)
    GREATER = "greater"


@dataclass
class ProposerState:
    man: int
    promoted: bool = False
    removed: bool = False
    cursor: int = 0


def _tier(acquainted: bool, promoted: bool) -> int:
    return 0 if acquainted or promoted else 1


def prefers(
    w: str,
    m_i: tuple[str, bool],
    m_k: tuple[str, bool],
    instance: HrssInstance,
) -> SuitorComparison:
    """Compare two suitors ``(man, promoted)`` on woman ``w``'s list.

    Acquainted men and promoted unacquainted men form the upper tier,
    unpromoted unacquainted men the lower one; rank decides inside a tier.
    """
    idx = instance.index
    j = idx.h_of[w]
    keys = []
    for man, promoted in (m_i, m_k):
        i = idx.r_of[man]
        if i not in idx.hrank[j]:
            raise ValueError(f"{man} is not on {w}'s list")
        keys.append((_tier((i, j) in idx.acq, promoted), idx.hrank[j][i]))
    return SuitorComparison.LESS if keys[0] < keys[1] else SuitorComparison.GREATER


@dataclass
class ApproxStats:
    proposals: int = 0
    deletions: int = 0
    promotions: int = 0
    removals: int = 0
    sequences: int = 0


@dataclass
class ApproxSmiss:
    """Working state of one run on an SMISS instance."""

    idx: InstanceIndex
    trace: TraceFn | None = None
    states: list[ProposerState] = field(init=False)
    partner_of_man: list[int] = field(init=False)
    partner_of_woman: list[int] = field(init=False)
    cutoff: list[int] = field(init=False)
    stats: ApproxStats = field(init=False, default_factory=ApproxStats)

    def __post_init__(self) -> None:
        idx = self.idx
        self.states = [ProposerState(i) for i in range(idx.n1)]
        self.partner_of_man = [-1] * idx.n1
        self.partner_of_woman = [-1] * idx.n2
        self.cutoff = [len(lst) for lst in idx.hpref]

    def _emit(self, event: str, **data) -> None:
        if self.trace is not None:
            self.trace(event, data)

    def deleted(self, m: int, w: int) -> bool:
        return self.idx.hrank[w][m] > self.cutoff[w]

    def _next(self, m: int) -> int:
        """Advance m's cursor to his next undeleted woman; -1 if exhausted."""
        st = self.states[m]
        prefs = self.idx.rpref[m]
        while st.cursor < len(prefs):
            w = prefs[st.cursor]
            st.cursor += 1
            if not self.deleted(m, w):
                return w
        return -1

    def _has_remaining(self, m: int, start: int) -> bool:
        prefs = self.idx.rpref[m]
        return any(not self.deleted(m, w) for w in prefs[start:])

    def _key(self, m: int, w: int) -> tuple[int, int]:
        return _tier((m, w) in self.idx.acq, self.states[m].promoted), self.idx.hrank[w][m]

    def _propose(self, m: int, w: int) -> int:
        """One proposal; returns the displaced man or -1."""
        idx = self.idx
        self.stats.proposals += 1
        self._emit("propose", man=idx.r_id[m], woman=idx.h_id[w])
        cur = self.partner_of_woman[w]
        displaced = -1
        if cur != -1 and self._key(m, w) < self._key(cur, w):
            self.partner_of_man[cur] = -1
            self.partner_of_woman[w] = -1
            displaced = cur
        if self.partner_of_woman[w] == -1:
            self.partner_of_woman[w] = m
            self.partner_of_man[m] = w
            self._emit("accept", man=idx.r_id[m], woman=idx.h_id[w],
                       displaced=idx.r_id[displaced] if displaced != -1 else None)
        else:
            self._emit("reject", man=idx.r_id[m], woman=idx.h_id[w])
        if (m, w) in idx.acq:
            rank = idx.hrank[w][m]
            if rank < self.cutoff[w]:
                gone = idx.hpref[w][rank:self.cutoff[w]]
                self.cutoff[w] = rank
                self.stats.deletions += len(gone)
                if self.trace is not None:
                    for k in gone:
                        self._emit("delete", man=idx.r_id[k], woman=idx.h_id[w])
            holder = self.partner_of_woman[w]
            # a woman's partner is never deleted from her list
            assert holder == -1 or not self.deleted(holder, w)
        return displaced

    def mod_exgs(self) -> None:
        """One proposal sequence: run until every active man is matched or exhausted.

        The free man of smallest index always proposes next.
        """
        self.stats.sequences += 1
        heap = [m for m, st in enumerate(self.states) if not st.removed and self.partner_of_man[m] == -1]
        heapq.heapify(heap)
        while heap:
            m = heapq.heappop(heap)
            w = self._next(m)
            if w == -1:
                continue
            displaced = self._propose(m, w)
            if displaced != -1:
                heapq.heappush(heap, displaced)
            if self.partner_of_man[m] == -1:
                heapq.heappush(heap, m)

    def run(self) -> list[int]:
        while True:
            self.mod_exgs()
            promoted_any = False
            for m, st in enumerate(self.states):
                if st.removed or self.partner_of_man[m] != -1:
                    continue
                if st.promoted:
                    st.removed = True
                    self.stats.removals += 1
                    self._emit("remove", man=self.idx.r_id[m])
                elif self._has_remaining(m, 0):
                    st.promoted = True
                    st.cursor = 0
                    promoted_any = True
                    self.stats.promotions += 1
                    self._emit("promote", man=self.idx.r_id[m])
            if not promoted_any:
                return list(self.partner_of_man)


def approx_smiss_run(instance: HrssInstance, trace: TraceFn | None = None) -> tuple[Matching, ApproxStats]:
    if not instance.is_smiss:
        raise PreconditionError("approx_smiss needs all capacities equal to 1; use approx_hrss")
    run = ApproxSmiss(instance.index, trace)
    assign = run.run()
    return matching_from_assignment(instance.index, assign), run.stats


def approx_smiss(instance: HrssInstance, trace: TraceFn | None = None) -> Matching:
    """Socially stable matching of size at least 2/3 of the maximum (capacities 1)."""
    return approx_smiss_run(instance, trace)[0]


def approx_hrss_run(instance: HrssInstance, trace: TraceFn | None = None) -> tuple[Matching, ApproxStats]:
    smiss, cmap = clone(instance)
    m, stats = approx_smiss_run(smiss, trace)
    return unclone(m, cmap, instance), stats


def approx_hrss(instance: HrssInstance, trace: TraceFn | None = None) -> Matching:
    """Same guarantee for arbitrary capacities, via cloning."""
    return approx_hrss_run(instance, trace)[0]
