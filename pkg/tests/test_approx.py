import pytest
from hypothesis import given

from _util import gen, instances
from hrss.approx import (
    ApproxSmiss,
    SuitorComparison,
    approx_hrss,
    approx_hrss_run,
    approx_smiss,
    approx_smiss_run,
    prefers,
)
from hrss.model import Matching, PreconditionError, build, fixture_fig1, fixture_tight, replicate
from hrss.oracle import max_socially_stable_bruteforce
from hrss.verification import is_socially_stable

LESS, GREATER = SuitorComparison.LESS, SuitorComparison.GREATER

# w ranks: a=1, b=2, c=3; only (c, w) is acquainted
SUITORS = build(
    {"a": ["w"], "b": ["w"], "c": ["w"]},
    {"w": ["a", "b", "c"]},
    acquainted=[("c", "w")],
)


def test_acquainted_beats_unpromoted_unacquainted():
    assert prefers("w", ("c", False), ("a", False), SUITORS) is LESS
    assert prefers("w", ("a", False), ("c", False), SUITORS) is GREATER


def test_promoted_beats_unpromoted():
    assert prefers("w", ("b", True), ("a", False), SUITORS) is LESS


def test_rank_decides_between_upper_tier():
    assert prefers("w", ("c", False), ("a", True), SUITORS) is GREATER
    assert prefers("w", ("a", True), ("c", False), SUITORS) is LESS


def test_prefers_rejects_stranger():
    inst = build({"a": ["w"], "z": ["v"]}, {"w": ["a"], "v": ["z"]})
    with pytest.raises(ValueError):
        prefers("w", ("z", False), ("a", False), inst)


def test_tight_fixture_gives_two():
    assert approx_smiss(fixture_tight()) == Matching.of([("m1", "w1"), ("m2", "w2")])


def test_fig1_output_is_socially_stable():
    m = approx_smiss(FIG1 := fixture_fig1())
    assert len(m) >= 1 and is_socially_stable(FIG1, m)
    # m1 is acquainted with w1, so m2's unacquainted bid is rejected
    assert m == Matching.of([("m1", "w1"), ("m2", "w2")])


def test_fig1_trace():
    events = []
    approx_smiss(fixture_fig1(), lambda e, d: events.append((e, d.get("man"), d.get("woman"))))
    assert events == [
        ("propose", "m1", "w1"),
        ("accept", "m1", "w1"),
        ("propose", "m2", "w1"),
        ("reject", "m2", "w1"),
        ("propose", "m2", "w2"),
        ("accept", "m2", "w2"),
    ]


def test_single_acquainted_pair():
    inst = build({"m": ["w"]}, {"w": ["m"]}, acquainted=[("m", "w")])
    assert approx_smiss(inst) == Matching.of([("m", "w")])


def test_capacity_rejected_by_smiss_entry():
    inst = build({"a": ["h"], "b": ["h"]}, {"h": ["a", "b"]}, capacity={"h": 2})
    with pytest.raises(PreconditionError):
        approx_smiss(inst)


def test_hrss_wrapper():
    assert approx_hrss(fixture_fig1()) == approx_smiss(fixture_fig1())
    inst = build({"a": ["h"], "b": ["h"]}, {"h": ["a", "b"]}, acquainted=[("a", "h"), ("b", "h")], capacity={"h": 2})
    assert approx_hrss(inst) == Matching.of([("a", "h"), ("b", "h")])


@pytest.mark.parametrize("k", range(1, 6))
def test_tight_family(k):
    inst = replicate(fixture_tight(), k)
    assert len(approx_smiss(inst)) == 2 * k


def test_promotion_and_removal_happen():
    # seed chosen so that both promotion and removal occur; checked once
    found = False
    for seed in range(300):
        inst = gen(seed, 6, 5, rho=0.5)
        m, stats = approx_smiss_run(inst)
        if stats.promotions and stats.removals:
            found = True
            assert is_socially_stable(inst, m)
            break
    assert found


@given(instances(max_res=6, max_hos=6))
def test_guarantee_on_smiss(inst):
    m, stats = approx_smiss_run(inst)
    assert is_socially_stable(inst, m)
    opt = len(max_socially_stable_bruteforce(inst))
    assert 3 * len(m) >= 2 * opt
    longest = max((len(v) for v in inst.resident_prefs.values()), default=0)
    assert stats.proposals <= 2 * len(inst.residents) * longest


@given(instances(max_res=6, max_hos=4, max_cap=3))
def test_guarantee_on_hrss(inst):
    m, _ = approx_hrss_run(inst)
    assert is_socially_stable(inst, m)
    assert 3 * len(m) >= 2 * len(max_socially_stable_bruteforce(inst))


@given(instances(max_res=6, max_hos=6))
def test_acquainted_better_proposal_is_accepted(inst):
    """An acquainted proposer beating the holder's rank is never rejected."""
    run = ApproxSmiss(inst.index)
    idx = inst.index
    log = []

    def trace(event, data):
        if event == "propose":
            m, w = idx.r_of[data["man"]], idx.h_of[data["woman"]]
            holder = run.partner_of_woman[w]
            log.append((m, w, holder))
        elif event in ("accept", "reject") and log:
            m, w, holder = log.pop()
            if (m, w) in idx.acq and (holder == -1 or idx.hrank[w][m] < idx.hrank[w][holder]):
                assert event == "accept"

    run.trace = trace
    run.run()
    assert all(st.promoted for st in run.states if st.removed)
