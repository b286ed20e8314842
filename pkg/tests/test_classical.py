import pytest
from hypothesis import given

from _util import instances
from hrss.classical import stable_matching, stable_matching_on_subinstance
from hrss.model import Matching, build, fixture_fig1
from hrss.oracle import enumerate_stable_matchings, max_socially_stable_bruteforce
from hrss.verification import classical_blocking_pairs, is_socially_stable

FIG1 = fixture_fig1()


def test_fig1_unique_stable_matching():
    assert stable_matching(FIG1) == Matching.of([("m2", "w1")])


def test_disjoint_singletons_all_matched():
    inst = build({f"r{i}": [f"h{i}"] for i in range(5)}, {f"h{i}": [f"r{i}"] for i in range(5)})
    assert len(stable_matching(inst)) == 5


def test_subinstance_examples():
    assert stable_matching_on_subinstance(FIG1, {("m2", "w1")}) == Matching.of([("m1", "w1"), ("m2", "w2")])
    assert stable_matching_on_subinstance(FIG1, set()) == Matching.of([("m2", "w1")])
    assert stable_matching_on_subinstance(FIG1, FIG1.acceptable) == Matching()


def test_subinstance_rejects_unknown_pair():
    with pytest.raises(ValueError):
        stable_matching_on_subinstance(FIG1, {("m1", "w2")})


@given(instances(max_res=6, max_cap=3))
def test_stable_and_rural_hospitals(inst):
    m = stable_matching(inst)
    assert classical_blocking_pairs(inst, m) == []
    assert is_socially_stable(inst, m)
    sizes = {len(x) for x in enumerate_stable_matchings(inst)}
    assert sizes == {len(m)}


@given(instances(max_res=6, max_cap=2))
def test_half_of_optimum(inst):
    assert 2 * len(stable_matching(inst)) >= len(max_socially_stable_bruteforce(inst))
