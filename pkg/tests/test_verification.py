import pytest
from hypothesis import given

from _util import all_matchings, instances, naive_blocking
from hrss.model import InvalidMatchingError, Matching, build, fixture_fig1
from hrss.classical import stable_matching
from hrss.reductions import HrsnInstance, SmtiInstance, hrss_to_hrsn, lift_matching
from hrss.verification import (
    blocking_report,
    classical_blocking_pairs,
    is_locally_stable,
    is_socially_stable,
    is_stable,
    smti_is_stable,
    social_blocking_pairs,
)

FIG1 = fixture_fig1()
M1 = Matching.of([("m1", "w1"), ("m2", "w2")])
M2 = Matching.of([("m2", "w1")])


def test_classical_blocking_on_fig1():
    assert classical_blocking_pairs(FIG1, M2) == []
    assert classical_blocking_pairs(FIG1, M1) == [("m2", "w1")]


def test_social_blocking_on_fig1():
    assert social_blocking_pairs(FIG1, M1) == []
    assert social_blocking_pairs(FIG1, Matching.of([("m1", "w1")])) == [("m2", "w2")]
    assert social_blocking_pairs(FIG1, Matching()) == [("m1", "w1"), ("m2", "w2")]


def test_social_stability_verdicts_on_fig1():
    assert is_socially_stable(FIG1, M2)
    assert is_socially_stable(FIG1, M1)
    assert not is_socially_stable(FIG1, Matching.of([("m1", "w1")]))
    assert is_stable(FIG1, M2) and not is_stable(FIG1, M1)


def test_report_tags():
    rep = blocking_report(FIG1, Matching())
    assert rep.social == [("m1", "w1"), ("m2", "w2")]
    assert set(rep.social) <= set(rep.classical)
    assert not rep.socially_stable and not rep.stable


def test_invalid_matching_raises():
    with pytest.raises(InvalidMatchingError):
        classical_blocking_pairs(FIG1, Matching.of([("m1", "w2")]))


def test_locally_stable_image_of_socially_stable():
    hrsn = hrss_to_hrsn(FIG1)
    assert is_locally_stable(hrsn, lift_matching(M1, hrsn))
    assert is_locally_stable(hrsn, Matching())


def test_local_blocking_needs_friend_in_hospital():
    # r2 and h block classically; r2 is r1's friend and r1 sits at h
    hr = build({"r1": ["h"], "r2": ["h"]}, {"h": ["r2", "r1"]})
    m = Matching.of([("r1", "h")])
    assert not is_locally_stable(HrsnInstance(hr, frozenset({frozenset({"r1", "r2"})})), m)
    assert is_locally_stable(HrsnInstance(hr, frozenset()), m)


def test_smti_weak_stability():
    one = SmtiInstance(("m",), ("w",), {"m": (("w",),)}, {"w": ("m",)})
    assert smti_is_stable(one, Matching.of([("m", "w")]))
    assert not smti_is_stable(one, Matching())
    tied = SmtiInstance(
        ("m1", "m2"),
        ("w1", "w2"),
        {"m1": (("w1", "w2"),), "m2": (("w2",),)},
        {"w1": ("m1",), "w2": ("m1", "m2")},
    )
    # w2 prefers m1, but m1 is indifferent between w1 and w2
    assert smti_is_stable(tied, Matching.of([("m1", "w1"), ("m2", "w2")]))
    with pytest.raises(InvalidMatchingError):
        smti_is_stable(tied, Matching.of([("m2", "w1")]))


@given(instances(max_cap=2))
def test_blocking_matches_definition(inst):
    for m in all_matchings(inst):
        classical = classical_blocking_pairs(inst, m)
        assert sorted(classical) == naive_blocking(inst, m)
        social = social_blocking_pairs(inst, m)
        assert social == [p for p in classical if p in inst.acquainted]


@given(instances(max_cap=2))
def test_extreme_densities(inst):
    full = inst.with_acquainted(inst.acceptable)
    empty = inst.with_acquainted(())
    for m in all_matchings(inst):
        assert is_socially_stable(full, m) == is_stable(inst, m)
        assert is_socially_stable(empty, m)
    assert classical_blocking_pairs(inst, stable_matching(inst)) == []
