"""Exact solvers exponential only in |U| (unacquainted pairs) or |A| (acquainted pairs).

Small |U|: every socially stable matching is stable in the instance with
some set of unacquainted pairs deleted, and vice versa, so the largest
stable matching over all deletion subsets is optimal.

Small |A|: each acquainted pair (r, h) must be kept from blocking either by
r holding something better than h (left branch) or by h being full with
residents no worse than r (right branch).  Each of the 2^|A| branch
combinations is a truncated instance plus a set of "red" agents that must
be saturated, checked with a max-weight matching on hospital clones.

The two branches only cover every case when capacities are 1: a resident
assigned to an undersubscribed acquainted hospital satisfies neither, yet
does not block.  Instances with larger capacities are therefore searched
through their cloned one-to-one form and the result is mapped back.
"""

from __future__ import annotations

from dataclasses import dataclass

from hrss.bipartite import WeightedBipartiteGraph, augment_preserving, matching_weight, max_weight_matching
from hrss.classical import gale_shapley
from hrss.model import HrssError, HrssInstance, Matching, Pair, matching_from_assignment
from hrss.reductions import clone, unclone

DEFAULT_MAX_UNACQUAINTED = 20
DEFAULT_MAX_ACQUAINTED = 16

LEFT = "left"
RIGHT = "right"


class BoundExceededError(HrssError):
    pass


def solve_fpt_unacquainted(instance: HrssInstance, bound: int = DEFAULT_MAX_UNACQUAINTED) -> Matching:
    """Largest stable matching of I minus U', over all subsets U' of U."""
    idx = instance.index
    unacq = [
        (r, h) for r in range(idx.n1) for h in idx.rpref[r] if (r, h) not in idx.acq
    ]
    if len(unacq) > bound:
        raise BoundExceededError(
            f"|U| = {len(unacq)} exceeds the bound {bound}; use the approximation solver"
        )
    best: list[int] | None = None
    best_size = -1
    for mask in range(1 << len(unacq)):
        removed = {p for k, p in enumerate(unacq) if mask >> k & 1}
        assign = gale_shapley(idx, removed)
        size = sum(1 for h in assign if h >= 0)
        if size > best_size:
            best, best_size = assign, size
    return matching_from_assignment(idx, best)


@dataclass(frozen=True)
class ConditionPath:
    """One branch choice (left or right) per acquainted pair, in canonical order."""

    pairs: tuple[Pair, ...]
    branches: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.pairs) != len(self.branches):
            raise ValueError("one branch per pair")
        if any(b not in (LEFT, RIGHT) for b in self.branches):
            raise ValueError("branches must be 'left' or 'right'")

    @property
    def residents(self) -> frozenset[str]:
        """Residents that must hold a hospital better than the paired one."""
        return frozenset(r for (r, _), b in zip(self.pairs, self.branches) if b == LEFT)

    @property
    def hospitals(self) -> frozenset[str]:
        """Hospitals that must be full with residents no worse than the paired one."""
        return frozenset(h for (_, h), b in zip(self.pairs, self.branches) if b == RIGHT)


def enumerate_paths(instance: HrssInstance, bound: int = DEFAULT_MAX_ACQUAINTED) -> list[ConditionPath]:
    """All 2^|A| paths; path p takes the right branch at pair i iff bit (k-1-i) of p is set."""
    pairs = tuple(instance.canonical_pairs(instance.acquainted))
    k = len(pairs)
    if k > bound:
        raise BoundExceededError(f"|A| = {k} exceeds the bound {bound}")
    return [
        ConditionPath(pairs, tuple(RIGHT if p >> (k - 1 - i) & 1 else LEFT for i in range(k)))
        for p in range(1 << k)
    ]


def apply_truncations(instance: HrssInstance, path: ConditionPath) -> HrssInstance:
    rp = {r: list(v) for r, v in instance.resident_prefs.items()}
    hp = {h: list(v) for h, v in instance.hospital_prefs.items()}
    for (r, h), branch in zip(path.pairs, path.branches):
        if branch == LEFT:
            lst = instance.resident_prefs[r]
            cut = lst.index(h)
            rp[r] = [x for x in rp[r] if lst.index(x) < cut]
        else:
            lst = instance.hospital_prefs[h]
            cut = lst.index(r)
            hp[h] = [x for x in hp[h] if lst.index(x) <= cut]
    keep = {(r, h) for r, hs in rp.items() for h in hs} & {(r, h) for h, rs in hp.items() for r in rs}
    return HrssInstance(
        instance.residents,
        instance.hospitals,
        instance.capacity,
        {r: tuple(h for h in hs if (r, h) in keep) for r, hs in rp.items()},
        {h: tuple(r for r in rs if (r, h) in keep) for h, rs in hp.items()},
        instance.acquainted & keep,
    )


def solve_path(truncated: HrssInstance, path: ConditionPath) -> Matching | None:
    """Maximum matching of the truncated instance saturating every red agent, or None."""
    red_residents = path.residents
    red_hospitals = path.hospitals
    clones = [(h, q) for h in truncated.hospitals for q in range(1, truncated.capacity[h] + 1)]
    g = WeightedBipartiteGraph(list(truncated.residents), clones)
    for r in truncated.residents:
        for h in truncated.resident_prefs[r]:
            for q in range(1, truncated.capacity[h] + 1):
                g.add_edge(r, (h, q), (r in red_residents) + (h in red_hospitals))
    target = len(red_residents) + sum(truncated.capacity[h] for h in red_hospitals)
    heavy = max_weight_matching(g)
    if matching_weight(g, heavy) < target:
        return None
    full = augment_preserving(g, heavy)
    return Matching(frozenset((r, hq[0]) for r, hq in full.items()))


@dataclass
class PathSearch:
    best: Matching
    n_paths: int
    n_feasible: int


def search_paths(instance: HrssInstance, bound: int = DEFAULT_MAX_ACQUAINTED) -> PathSearch:
    """Best matching over all feasible paths; ``bound`` caps |A| of the searched (cloned) instance."""
    if not instance.is_smiss:
        smiss, cmap = clone(instance)
        found = search_paths(smiss, bound)
        return PathSearch(unclone(found.best, cmap, instance), found.n_paths, found.n_feasible)
    best: Matching | None = None
    paths = enumerate_paths(instance, bound)
    feasible = 0
    for path in paths:
        m = solve_path(apply_truncations(instance, path), path)
        if m is None:
            continue
        feasible += 1
        if best is None or len(m) > len(best):
            best = m
    if best is None:
        raise HrssError("no feasible condition path; this contradicts the existence of a stable matching")
    return PathSearch(best, len(paths), feasible)


def solve_fpt_acquainted(instance: HrssInstance, bound: int = DEFAULT_MAX_ACQUAINTED) -> Matching:
    """Maximum socially stable matching, exponential only in |A|."""
    return search_paths(instance, bound).best

