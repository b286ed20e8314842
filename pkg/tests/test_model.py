import pytest
from hypothesis import given

from _util import instances
from hrss.model import (
    HrssInstance,
    InvalidInstanceError,
    InvalidMatchingError,
    Matching,
    build,
    check_matching,
    fixture_fig1,
    fixture_tight,
    replicate,
    validate,
)


def codes(instance):
    return {v.code for v in validate(instance)}


def messages(instance):
    return {v.message for v in validate(instance)}


def test_fig1_is_valid_with_expected_pair_sets():
    inst = fixture_fig1()
    assert validate(inst) == []
    assert len(inst.acceptable) == 3
    assert len(inst.acquainted) == 2
    assert inst.unacquainted == {("m2", "w1")}
    assert inst.is_smiss


def test_tight_fixture_counts():
    inst = fixture_tight()
    assert validate(inst) == []
    assert len(inst.acceptable) == 5
    assert inst.acquainted == {("m1", "w1"), ("m1", "w3"), ("m2", "w2")}
    assert {("m2", "w1"), ("m3", "w2")} <= inst.unacquainted


def test_acquainted_pair_outside_acceptable_set_is_reported():
    inst = fixture_fig1().with_acquainted({("m1", "w1"), ("m2", "w2"), ("m1", "w2")})
    v = [x for x in validate(inst) if x.code == "acquainted-not-acceptable"]
    assert len(v) == 1
    assert v[0].message == "acquainted pair not acceptable"
    assert v[0].ids == ("m1", "w2")


def test_zero_capacity_is_reported():
    inst = build({"r": ["h"]}, {"h": ["r"]}, capacity={"h": 0})
    assert "capacity must be positive" in messages(inst)


def test_asymmetric_lists_are_reported():
    inst = build({"r": ["h"]}, {"h": []})
    assert "asymmetric" in codes(inst)


def test_duplicate_ids_and_entries():
    inst = HrssInstance(("r", "r"), ("h",), {"h": 1}, {"r": ("h",)}, {"h": ("r",)})
    assert "duplicate-id" in codes(inst)
    inst = build({"r": ["h", "h"]}, {"h": ["r"]})
    assert "duplicate-entry" in codes(inst)
    inst = HrssInstance(("x",), ("x",), {"x": 1}, {"x": ()}, {"x": ()})
    assert "shared-id" in codes(inst)


def test_index_rejects_invalid_instance():
    inst = build({"r": ["h"]}, {"h": ["r"]}, capacity={"h": 0})
    with pytest.raises(InvalidInstanceError):
        inst.index


def test_ranks_are_one_based():
    idx = fixture_fig1().index
    w1 = idx.h_of["w1"]
    assert idx.hrank[w1] == {idx.r_of["m2"]: 1, idx.r_of["m1"]: 2}


def test_check_matching_rejects_bad_matchings():
    inst = fixture_fig1()
    with pytest.raises(InvalidMatchingError):
        check_matching(inst, Matching.of([("m1", "w2")]))
    with pytest.raises(InvalidMatchingError):
        check_matching(inst, Matching.of([("m1", "w1"), ("m2", "w1")]))
    with pytest.raises(InvalidMatchingError):
        check_matching(inst, Matching.of([("m2", "w1"), ("m2", "w2")]))
    with pytest.raises(InvalidMatchingError):
        check_matching(inst, Matching.of([("zz", "w1")]))


def test_replicate_is_disjoint_union():
    inst = replicate(fixture_tight(), 3)
    assert validate(inst) == []
    assert len(inst.residents) == 9
    assert len(inst.acquainted) == 9


def test_without_pairs_removes_both_sides():
    inst = fixture_fig1().without_pairs({("m2", "w1")})
    assert inst.resident_prefs["m2"] == ("w2",)
    assert inst.hospital_prefs["w1"] == ("m1",)
    assert validate(inst) == []


@given(instances(max_cap=3))
def test_acceptable_splits_into_acquainted_and_unacquainted(inst):
    assert validate(inst) == []
    assert inst.acquainted | inst.unacquainted == inst.acceptable
    assert not inst.acquainted & inst.unacquainted
