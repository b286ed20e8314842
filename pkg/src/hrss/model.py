"""Domain types for HRSS / SMISS instances and matchings.

An instance is stored with opaque string ids.  Solvers work on an
:class:`InstanceIndex`, a dense integer view built once per instance and
cached on it.  SMISS is simply an :class:`HrssInstance` whose capacities
are all 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

Pair = tuple[str, str]


class HrssError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInstanceError(HrssError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


class InvalidMatchingError(HrssError):
    pass


class PreconditionError(HrssError):
    """A solver was called on an instance outside its supported class."""


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    ids: tuple[str, ...] = ()

    def __str__(self) -> str:
        if self.ids:
            return f"{self.message}: {' '.join(self.ids)}"
        return self.message


@dataclass(frozen=True)
class HrssInstance:
    """Residents, hospitals with capacities, strict lists and acquainted pairs.

    The acceptable pairs are read off the resident lists; the unacquainted
    pairs are derived as ``acceptable - acquainted`` and never stored.
    """

    residents: tuple[str, ...]
    hospitals: tuple[str, ...]
    capacity: Mapping[str, int]
    resident_prefs: Mapping[str, tuple[str, ...]]
    hospital_prefs: Mapping[str, tuple[str, ...]]
    acquainted: frozenset[Pair] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "residents", tuple(self.residents))
        object.__setattr__(self, "hospitals", tuple(self.hospitals))
        object.__setattr__(self, "capacity", dict(self.capacity))
        object.__setattr__(
            self, "resident_prefs", {k: tuple(v) for k, v in self.resident_prefs.items()}
        )
        object.__setattr__(
            self, "hospital_prefs", {k: tuple(v) for k, v in self.hospital_prefs.items()}
        )
        object.__setattr__(self, "acquainted", frozenset(tuple(p) for p in self.acquainted))

    @cached_property
    def acceptable(self) -> frozenset[Pair]:
        return frozenset(
            (r, h) for r in self.residents for h in self.resident_prefs.get(r, ())
        )

    @property
    def unacquainted(self) -> frozenset[Pair]:
        return self.acceptable - self.acquainted

    @property
    def n_residents(self) -> int:
        return len(self.residents)

    @property
    def n_hospitals(self) -> int:
        return len(self.hospitals)

    @property
    def total_capacity(self) -> int:
        return sum(self.capacity.values())

    @property
    def max_capacity(self) -> int:
        return max(self.capacity.values(), default=0)

    @property
    def is_smiss(self) -> bool:
        return all(c == 1 for c in self.capacity.values())

    @cached_property
    def index(self) -> InstanceIndex:
        """Dense integer view; raises :class:`InvalidInstanceError` if invalid."""
        violations = validate(self)
        if violations:
            raise InvalidInstanceError(violations)
        return InstanceIndex(self)

    def canonical_pairs(self, pairs: Iterable[Pair]) -> list[Pair]:
        """Sort acceptable pairs by (resident index, rank on resident's list)."""
        idx = self.index
        return sorted(
            pairs, key=lambda p: (idx.r_of[p[0]], idx.rrank[idx.r_of[p[0]]][idx.h_of[p[1]]])
        )

    def with_acquainted(self, acquainted: Iterable[Pair]) -> HrssInstance:
        return HrssInstance(
            self.residents,
            self.hospitals,
            self.capacity,
            self.resident_prefs,
            self.hospital_prefs,
            frozenset(acquainted),
        )

    def without_pairs(self, pairs: Iterable[Pair]) -> HrssInstance:
        """Copy with ``pairs`` deleted from both sides' lists (and from A)."""
        drop = set(pairs)
        if not drop:
            return self
        rp = {r: tuple(h for h in hs if (r, h) not in drop) for r, hs in self.resident_prefs.items()}
        hp = {h: tuple(r for r in rs if (r, h) not in drop) for h, rs in self.hospital_prefs.items()}
        return HrssInstance(
            self.residents, self.hospitals, self.capacity, rp, hp, self.acquainted - drop
        )


class InstanceIndex:
    """Integer-indexed view of a valid instance.

    Ranks are 1-based positions in the original lists.  Residents and
    hospitals are numbered in input order.
    """

    def __init__(self, instance: HrssInstance):
        self.instance = instance
        self.r_id = instance.residents
        self.h_id = instance.hospitals
        self.n1 = len(self.r_id)
        self.n2 = len(self.h_id)
        self.r_of = {r: i for i, r in enumerate(self.r_id)}
        self.h_of = {h: j for j, h in enumerate(self.h_id)}
        self.cap = [instance.capacity[h] for h in self.h_id]
        self.rpref = [[self.h_of[h] for h in instance.resident_prefs[r]] for r in self.r_id]
        self.hpref = [[self.r_of[r] for r in instance.hospital_prefs[h]] for h in self.h_id]
        self.rrank = [{h: k + 1 for k, h in enumerate(lst)} for lst in self.rpref]
        self.hrank = [{r: k + 1 for k, r in enumerate(lst)} for lst in self.hpref]
        self.acq = {(self.r_of[r], self.h_of[h]) for r, h in instance.acquainted}

    def pair_ids(self, r: int, h: int) -> Pair:
        return self.r_id[r], self.h_id[h]


@dataclass(frozen=True)
class Matching:
    """A set of (resident, hospital) pairs."""

    pairs: frozenset[Pair] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", frozenset(tuple(p) for p in self.pairs))

    @classmethod
    def of(cls, pairs: Iterable[Pair] = ()) -> Matching:
        return cls(frozenset(pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(sorted(self.pairs))

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    @property
    def size(self) -> int:
        return len(self.pairs)

    def hospital_of(self, resident: str) -> str | None:
        for r, h in self.pairs:
            if r == resident:
                return h
        return None

    def assignees(self, hospital: str) -> set[str]:
        return {r for r, h in self.pairs if h == hospital}

    def residents(self) -> set[str]:
        return {r for r, _ in self.pairs}


def validate(instance: HrssInstance) -> list[Violation]:
    """Return every invariant violation of ``instance``; empty means ok."""
    out: list[Violation] = []
    res, hos = instance.residents, instance.hospitals
    for kind, ids in (("resident", res), ("hospital", hos)):
        seen: set[str] = set()
        for x in ids:
            if x in seen:
                out.append(Violation("duplicate-id", f"duplicate {kind} id", (x,)))
            seen.add(x)
    both = set(res) & set(hos)
    if both:
        out.append(Violation("shared-id", "id used for both a resident and a hospital", tuple(sorted(both))))
    rset, hset = set(res), set(hos)

    for h in hos:
        c = instance.capacity.get(h)
        if c is None:
            out.append(Violation("missing-capacity", "hospital has no capacity", (h,)))
        elif not isinstance(c, int) or c < 1:
            out.append(Violation("bad-capacity", "capacity must be positive", (h, str(c))))
    for h in instance.capacity:
        if h not in hset:
            out.append(Violation("unknown-agent", "capacity given for unknown hospital", (h,)))

    for agents, prefs, others, kind in (
        (res, instance.resident_prefs, hset, "resident"),
        (hos, instance.hospital_prefs, rset, "hospital"),
    ):
        for a in agents:
            if a not in prefs:
                out.append(Violation("missing-prefs", f"{kind} has no preference list", (a,)))
                continue
            lst = prefs[a]
            if len(set(lst)) != len(lst):
                out.append(Violation("duplicate-entry", "preference list has duplicates", (a,)))
            for b in lst:
                if b not in others:
                    out.append(Violation("unknown-agent", "preference list names unknown agent", (a, b)))
        known = set(agents)
        for a in prefs:
            if a not in known:
                out.append(Violation("unknown-agent", f"preference list for unknown {kind}", (a,)))

    r_side = {(r, h) for r in res for h in instance.resident_prefs.get(r, ())}
    h_side = {(r, h) for h in hos for r in instance.hospital_prefs.get(h, ())}
    for r, h in sorted(r_side - h_side):
        out.append(Violation("asymmetric", "resident lists hospital that does not list them", (r, h)))
    for r, h in sorted(h_side - r_side):
        out.append(Violation("asymmetric", "hospital lists resident that does not list it", (h, r)))
    for r, h in sorted(instance.acquainted - r_side):
        out.append(Violation("acquainted-not-acceptable", "acquainted pair not acceptable", (r, h)))
    return out


def check_matching(instance: HrssInstance, matching: Matching) -> list[int]:
    """Validate ``matching`` against ``instance``; return resident -> hospital index (-1 if free)."""
    idx = instance.index
    assign = [-1] * idx.n1
    load = [0] * idx.n2
    for r, h in matching.pairs:
        if r not in idx.r_of or h not in idx.h_of:
            raise InvalidMatchingError(f"unknown agent in pair ({r}, {h})")
        i, j = idx.r_of[r], idx.h_of[h]
        if j not in idx.rrank[i]:
            raise InvalidMatchingError(f"pair ({r}, {h}) is not acceptable")
        if assign[i] != -1:
            raise InvalidMatchingError(f"resident {r} is matched more than once")
        assign[i] = j
        load[j] += 1
        if load[j] > idx.cap[j]:
            raise InvalidMatchingError(f"hospital {h} is over capacity")
    return assign


def matching_from_assignment(idx: InstanceIndex, assign: Iterable[int]) -> Matching:
    return Matching(frozenset(idx.pair_ids(r, h) for r, h in enumerate(assign) if h >= 0))


def build(
    resident_prefs: Mapping[str, Iterable[str]],
    hospital_prefs: Mapping[str, Iterable[str]],
    acquainted: Iterable[Pair] = (),
    capacity: Mapping[str, int] | None = None,
) -> HrssInstance:
    """Convenience constructor: agent order follows the mapping order, capacities default to 1."""
    capacity = dict(capacity or {})
    return HrssInstance(
        residents=tuple(resident_prefs),
        hospitals=tuple(hospital_prefs),
        capacity={h: capacity.get(h, 1) for h in hospital_prefs},
        resident_prefs={r: tuple(v) for r, v in resident_prefs.items()},
        hospital_prefs={h: tuple(v) for h, v in hospital_prefs.items()},
        acquainted=frozenset(acquainted),
    )


def fixture_fig1() -> HrssInstance:
    """Two men, two women; the unique stable matching has half the maximum size."""
    return build(
        {"m1": ["w1"], "m2": ["w1", "w2"]},
        {"w1": ["m2", "m1"], "w2": ["m2"]},
        acquainted=[("m1", "w1"), ("m2", "w2")],
    )


def fixture_tight() -> HrssInstance:
    """Instance on which the 3/2-approximation returns 2 pairs out of an optimum 3."""
    return build(
        {"m1": ["w1", "w3"], "m2": ["w1", "w2"], "m3": ["w2"]},
        {"w1": ["m2", "m1"], "w2": ["m2", "m3"], "w3": ["m1"]},
        acquainted=[("m1", "w1"), ("m1", "w3"), ("m2", "w2")],
    )


def replicate(instance: HrssInstance, k: int) -> HrssInstance:
    """Disjoint union of ``k`` renamed copies (``id~c`` for copy ``c``)."""

    def tag(x: str, c: int) -> str:
        return f"{x}~{c}"

    cs = range(1, k + 1)
    return HrssInstance(
        residents=tuple(tag(r, c) for c in cs for r in instance.residents),
        hospitals=tuple(tag(h, c) for c in cs for h in instance.hospitals),
        capacity={tag(h, c): instance.capacity[h] for c in cs for h in instance.hospitals},
        resident_prefs={
            tag(r, c): tuple(tag(h, c) for h in instance.resident_prefs[r])
            for c in cs
            for r in instance.residents
        },
        hospital_prefs={
            tag(h, c): tuple(tag(r, c) for r in instance.hospital_prefs[h])
            for c in cs
            for h in instance.hospitals
        },
        acquainted=frozenset((tag(r, c), tag(h, c)) for c in cs for r, h in instance.acquainted),
    )
