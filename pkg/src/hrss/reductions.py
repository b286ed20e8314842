"""Constructions between problem classes.

* cloning: HRSS <-> SMISS (hospital of capacity c becomes c women)
* HRSS -> HR+SN (one dummy resident per hospital carries the social ties)
* SMTI with tail ties on the men's side -> SMISS
* independent set -> SMISS gadget
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from hrss.model import (
    HrssError,
    HrssInstance,
    InvalidMatchingError,
    Matching,
    Pair,
    PreconditionError,
)

CLONE_SEP = "::"
DUMMY_PREFIX = "dummy::"


# -- cloning ----------------------------------------------------------------


@dataclass(frozen=True)
class CloneMap:
    """Clone id -> original hospital, and hospital -> its clones in subscript order."""

    hospital_of: Mapping[str, str]
    clones_of: Mapping[str, tuple[str, ...]]


def clone_id(hospital: str, k: int) -> str:
    return f"{hospital}{CLONE_SEP}{k}"


def clone(instance: HrssInstance) -> tuple[HrssInstance, CloneMap]:
    """Expand each hospital h of capacity c into women h::1 .. h::c."""
    clones_of = {h: tuple(clone_id(h, k) for k in range(1, instance.capacity[h] + 1)) for h in instance.hospitals}
    hospital_of = {c: h for h, cs in clones_of.items() for c in cs}
    women = tuple(c for h in instance.hospitals for c in clones_of[h])
    smiss = HrssInstance(
        residents=instance.residents,
        hospitals=women,
        capacity={c: 1 for c in women},
        resident_prefs={
            r: tuple(c for h in instance.resident_prefs[r] for c in clones_of[h]) for r in instance.residents
        },
        hospital_prefs={c: instance.hospital_prefs[hospital_of[c]] for c in women},
        acquainted=frozenset((r, c) for r, h in instance.acquainted for c in clones_of[h]),
    )
    return smiss, CloneMap(hospital_of, clones_of)


def unclone(matching: Matching, cmap: CloneMap, instance: HrssInstance | None = None) -> Matching:
    """Map (r, h::k) back to (r, h)."""
    pairs = set()
    load: dict[str, int] = {}
    seen: set[str] = set()
    for r, c in matching.pairs:
        if c not in cmap.hospital_of:
            raise InvalidMatchingError(f"{c} is not a clone")
        if r in seen:
            raise InvalidMatchingError(f"resident {r} matched more than once")
        seen.add(r)
        h = cmap.hospital_of[c]
        load[h] = load.get(h, 0) + 1
        limit = instance.capacity[h] if instance is not None else len(cmap.clones_of[h])
        if load[h] > limit:
            raise InvalidMatchingError(f"hospital {h} over capacity after uncloning")
        pairs.add((r, h))
    return Matching(frozenset(pairs))


def clone_matching(matching: Matching, instance: HrssInstance, cmap: CloneMap) -> Matching:
    """Give h's assignees the clones h::1, h::2, ... in h's preference order."""
    pairs = []
    for h in instance.hospitals:
        rank = {r: i for i, r in enumerate(instance.hospital_prefs[h])}
        ordered = sorted(matching.assignees(h), key=rank.__getitem__)
        if len(ordered) > len(cmap.clones_of[h]):
            raise InvalidMatchingError(f"hospital {h} over capacity")
        pairs.extend(zip(ordered, cmap.clones_of[h]))
    return Matching(frozenset(pairs))


# -- HRSS -> HR+SN ------------------------------------------------------------


@dataclass(frozen=True)
class HrsnInstance:
    """An HR instance plus an undirected social graph on the residents."""

    hr: HrssInstance
    edges: frozenset[frozenset[str]]
    dummy_of: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for e in self.edges:
            if len(e) != 2:
                raise HrssError("social edges must join two distinct residents")
            if not e <= set(self.hr.residents):
                raise HrssError(f"social edge {sorted(e)} names unknown residents")

    @cached_property
    def _adjacent(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {}
        for e in self.edges:
            a, b = tuple(e)
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        return adj

    def are_friends(self, a: str, b: str) -> bool:
        return b in self._adjacent.get(a, ())

    @property
    def dummy_pairs(self) -> frozenset[Pair]:
        return frozenset((d, h) for h, d in self.dummy_of.items())


def dummy_id(hospital: str) -> str:
    return f"{DUMMY_PREFIX}{hospital}"


def hrss_to_hrsn(instance: HrssInstance) -> HrsnInstance:
    """Add a dummy resident per hospital, ranked first, and raise capacity by one.

    A resident is friends with the dummy of every hospital it is acquainted with.
    """
    dummy_of = {h: dummy_id(h) for h in instance.hospitals}
    clash = set(dummy_of.values()) & (set(instance.residents) | set(instance.hospitals))
    if clash:
        raise HrssError(f"dummy ids collide with existing ids: {sorted(clash)}")
    hr = HrssInstance(
        residents=instance.residents + tuple(dummy_of[h] for h in instance.hospitals),
        hospitals=instance.hospitals,
        capacity={h: instance.capacity[h] + 1 for h in instance.hospitals},
        resident_prefs={
            **{r: instance.resident_prefs[r] for r in instance.residents},
            **{dummy_of[h]: (h,) for h in instance.hospitals},
        },
        hospital_prefs={h: (dummy_of[h],) + instance.hospital_prefs[h] for h in instance.hospitals},
    )
    edges = frozenset(frozenset((r, dummy_of[h])) for r, h in instance.acquainted)
    return HrsnInstance(hr, edges, dummy_of)


def lift_matching(matching: Matching, hrsn: HrsnInstance) -> Matching:
    """M -> M plus every dummy assigned to its own hospital."""
    return Matching(matching.pairs | hrsn.dummy_pairs)


def project_matching(matching: Matching, hrsn: HrsnInstance) -> Matching:
    return Matching(matching.pairs - hrsn.dummy_pairs)


# -- SMTI -> SMISS ---------------------------------------------------------


@dataclass(frozen=True)
class SmtiInstance:
    """Stable marriage with ties: men's lists are sequences of indifference groups."""

    men: tuple[str, ...]
    women: tuple[str, ...]
    men_prefs: Mapping[str, tuple[tuple[str, ...], ...]]
    women_prefs: Mapping[str, tuple[str, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "men", tuple(self.men))
        object.__setattr__(self, "women", tuple(self.women))
        object.__setattr__(
            self, "men_prefs", {m: tuple(tuple(g) for g in gs) for m, gs in self.men_prefs.items()}
        )
        object.__setattr__(self, "women_prefs", {w: tuple(v) for w, v in self.women_prefs.items()})
        man_side = {(m, w) for m in self.men for g in self.men_prefs[m] for w in g}
        woman_side = {(m, w) for w in self.women for m in self.women_prefs[w]}
        if man_side != woman_side:
            raise HrssError("SMTI acceptability is not symmetric")

    @cached_property
    def acceptable(self) -> frozenset[Pair]:
        return frozenset((m, w) for m in self.men for g in self.men_prefs[m] for w in g)

    @cached_property
    def _man_level(self) -> dict[Pair, int]:
        return {(m, w): k for m in self.men for k, g in enumerate(self.men_prefs[m]) for w in g}

    @cached_property
    def _woman_rank(self) -> dict[Pair, int]:
        return {(m, w): k for w in self.women for k, m in enumerate(self.women_prefs[w])}

    def man_level(self, m: str, w: str) -> int:
        """Index of the indifference group containing ``w`` on m's list."""
        return self._man_level[(m, w)]

    def woman_rank(self, w: str, m: str) -> int:
        return self._woman_rank[(m, w)]

    def tail_tie(self, m: str) -> tuple[str, ...]:
        groups = self.men_prefs[m]
        return groups[-1] if groups else ()

    def ties_at_tail(self) -> bool:
        return all(len(g) == 1 for m in self.men for g in self.men_prefs[m][:-1])


def smti_to_smiss(smti: SmtiInstance, seed: int = 0) -> HrssInstance:
    """Break the ties with a seeded shuffle; a pair is acquainted unless it is in the man's tie."""
    if not smti.ties_at_tail():
        bad = [m for m in smti.men if any(len(g) > 1 for g in smti.men_prefs[m][:-1])]
        raise PreconditionError(f"ties must be at the tail of men's lists: {bad}")
    rng = random.Random(seed)
    men_prefs = {}
    acquainted = set()
    for m in smti.men:
        groups = smti.men_prefs[m]
        strict: list[str] = [g[0] for g in groups[:-1]]
        tie = list(groups[-1]) if groups else []
        rng.shuffle(tie)
        men_prefs[m] = tuple(strict + tie)
        acquainted.update((m, w) for w in strict)
    return HrssInstance(
        residents=smti.men,
        hospitals=smti.women,
        capacity={w: 1 for w in smti.women},
        resident_prefs=men_prefs,
        hospital_prefs=smti.women_prefs,
        acquainted=frozenset(acquainted),
    )


# -- IND SET -> SMISS ------------------------------------------------------


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph with a fixed vertex enumeration."""

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise HrssError("duplicate vertex")
        vs = set(self.vertices)
        for e in self.edges:
            if len(e) != 2:
                raise HrssError("self-loops are not allowed")
            if not e <= vs:
                raise HrssError(f"edge {sorted(e)} names unknown vertices")

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> SimpleGraph:
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    def neighbors(self, v: str) -> list[str]:
        """Neighbors of ``v`` in enumeration order."""
        return [u for u in self.vertices if frozenset((u, v)) in self.edges]


def gadget_ids(v: str) -> tuple[str, str, str, str]:
    """(type-1 man, type-2 man, type-1 woman, type-2 woman) for vertex ``v``."""
    return f"m1_{v}", f"m2_{v}", f"w1_{v}", f"w2_{v}"


def indset_to_smiss(g: SimpleGraph) -> HrssInstance:
    """Build the SMISS instance whose maximum socially stable matching has size n + alpha(g)."""
    rp: dict[str, tuple[str, ...]] = {}
    hp: dict[str, tuple[str, ...]] = {}
    residents, hospitals = [], []
    acquainted = set()
    for v in g.vertices:
        m1, m2, w1, w2 = gadget_ids(v)
        nbrs = g.neighbors(v)
        residents += [m1, m2]
        hospitals += [w1, w2]
        rp[m1] = (w2, *(gadget_ids(u)[3] for u in nbrs), w1)
        rp[m2] = (w2,)
        hp[w1] = (m1,)
        hp[w2] = (m1, *(gadget_ids(u)[0] for u in nbrs), m2)
        acquainted.update((m1, gadget_ids(u)[3]) for u in nbrs)
    return HrssInstance(
        residents=tuple(residents),
        hospitals=tuple(hospitals),
        capacity={w: 1 for w in hospitals},
        resident_prefs=rp,
        hospital_prefs=hp,
        acquainted=frozenset(acquainted),
    )
