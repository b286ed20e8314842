"""Seeded random instance generation."""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, fields

from hrss.model import HrssError, HrssInstance


class GenSpecError(HrssError):
    pass


@dataclass(frozen=True)
class GenSpec:
    seed: int = 0
    n1: int = 5
    n2: int = 5
    capacity: tuple[int, int] = (1, 1)
    list_length: tuple[int, int] = (1, 3)
    rho: float = 0.5
    men_degree_le_2: bool = False
    max_acquainted: int | None = None
    max_unacquainted: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "capacity", tuple(self.capacity))
        object.__setattr__(self, "list_length", tuple(self.list_length))
        if not 0.0 <= self.rho <= 1.0:
            raise GenSpecError(f"rho must lie in [0, 1], got {self.rho}")
        if self.n1 < 0 or self.n2 < 0:
            raise GenSpecError("agent counts must be non-negative")
        lo, hi = self.capacity
        if not 1 <= lo <= hi:
            raise GenSpecError(f"bad capacity range {self.capacity}")
        lo, hi = self.list_length
        if not 0 <= lo <= hi:
            raise GenSpecError(f"bad list-length range {self.list_length}")
        if lo > self.n2:
            raise GenSpecError(f"list length {lo} exceeds the {self.n2} hospitals")
        if self.men_degree_le_2 and lo > 2:
            raise GenSpecError("men_degree_le_2 conflicts with minimum list length > 2")
        for name in ("max_acquainted", "max_unacquainted"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise GenSpecError(f"{name} must be non-negative")

    @classmethod
    def from_dict(cls, data: dict) -> GenSpec:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise GenSpecError(f"unknown GenSpec keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> GenSpec:
        return cls.from_dict(json.loads(text))

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def generate(spec: GenSpec) -> HrssInstance:
    """Random instance: residents pick random lists, hospitals rank their applicants randomly.

    Each acceptable pair is acquainted with probability ``rho``; the optional
    caps on |A| or |U| are then enforced by flipping random pairs.
    """
    rng = random.Random(spec.seed)
    residents = [f"r{i}" for i in range(1, spec.n1 + 1)]
    hospitals = [f"h{j}" for j in range(1, spec.n2 + 1)]
    lo, hi = spec.list_length
    hi = min(hi, spec.n2)
    if spec.men_degree_le_2:
        hi = min(hi, 2)
    rprefs = {}
    for r in residents:
        rprefs[r] = rng.sample(hospitals, rng.randint(lo, hi))
    applicants: dict[str, list[str]] = {h: [] for h in hospitals}
    for r in residents:
        for h in rprefs[r]:
            applicants[h].append(r)
    hprefs = {}
    for h in hospitals:
        lst = applicants[h][:]
        rng.shuffle(lst)
        hprefs[h] = lst
    capacity = {h: rng.randint(*spec.capacity) for h in hospitals}

    pairs = [(r, h) for r in residents for h in rprefs[r]]
    acquainted = [p for p in pairs if rng.random() < spec.rho]
    if spec.max_acquainted is not None and len(acquainted) > spec.max_acquainted:
        acquainted = rng.sample(acquainted, spec.max_acquainted)
    if spec.max_unacquainted is not None:
        chosen = set(acquainted)
        unacq = [p for p in pairs if p not in chosen]
        excess = len(unacq) - spec.max_unacquainted
        if excess > 0:
            chosen.update(rng.sample(unacq, excess))
        acquainted = [p for p in pairs if p in chosen]
        if spec.max_acquainted is not None and len(acquainted) > spec.max_acquainted:
            raise GenSpecError("cannot satisfy both max_acquainted and max_unacquainted")
    return HrssInstance(
        residents=tuple(residents),
        hospitals=tuple(hospitals),
        capacity=capacity,
        resident_prefs=rprefs,
        hospital_prefs=hprefs,
        acquainted=frozenset(acquainted),
    )
