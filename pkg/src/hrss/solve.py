"""Uniform entry point over all solvers."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from hrss.approx import TraceFn, approx_hrss_run
from hrss.classical import stable_matching
from hrss.fpt import DEFAULT_MAX_ACQUAINTED, DEFAULT_MAX_UNACQUAINTED, search_paths, solve_fpt_unacquainted
from hrss.model import HrssInstance, Matching
from hrss.oracle import max_socially_stable_bruteforce
from hrss.two_list import solve_two_inf_run
from hrss.verification import is_socially_stable

ALGORITHMS = ("stable", "approx", "two-inf", "fpt-u", "fpt-a", "brute")


@dataclass
class SolveReport:
    matching: Matching
    algorithm: str
    runtime: float
    socially_stable: bool
    deletions: int | None = None
    promotions: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.matching)


def solve(
    instance: HrssInstance,
    algorithm: str,
    *,
    trace: TraceFn | None = None,
    brute_limit: int | None = None,
    max_unacquainted: int = DEFAULT_MAX_UNACQUAINTED,
    max_acquainted: int = DEFAULT_MAX_ACQUAINTED,
) -> SolveReport:
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    instance.index  # validate before timing
    deletions = promotions = None
    extra: dict = {}
    start = time.perf_counter()
    if algorithm == "stable":
        m = stable_matching(instance)
    elif algorithm == "approx":
        m, stats = approx_hrss_run(instance, trace)
        deletions, promotions = stats.deletions, stats.promotions
        extra = {"proposals": stats.proposals, "removals": stats.removals}
    elif algorithm == "two-inf":
        m, stats = solve_two_inf_run(instance)
        deletions = stats.deletions
        extra = {"phase3_moves": stats.phase3_moves}
    elif algorithm == "fpt-u":
        m = solve_fpt_unacquainted(instance, max_unacquainted)
    elif algorithm == "fpt-a":
        found = search_paths(instance, max_acquainted)
        m = found.best
        extra = {"paths": found.n_paths, "feasible_paths": found.n_feasible}
    else:
        m = max_socially_stable_bruteforce(instance, brute_limit)
    runtime = time.perf_counter() - start
    return SolveReport(m, algorithm, runtime, is_socially_stable(instance, m), deletions, promotions, extra)
