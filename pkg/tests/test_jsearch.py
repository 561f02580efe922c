import pytest
from hypothesis import given, strategies as st

from nilcx.catalog import abelian, g68, m0, m0r
from nilcx.cxstructs import AlmostComplexStructure, classify, is_abelian_structure
from nilcx.jsearch import (
    CLASSES,
    JCandidate,
    candidate_at,
    candidate_for,
    count,
    enumerate_candidates,
    search,
    verify_certificate,
)

G = g68()


@pytest.mark.parametrize("n, total", [(2, 2), (4, 12), (6, 120), (8, 1680)])
def test_counts(n, total):
    assert count(n) == total


def test_odd_dimension_rejected():
    with pytest.raises(ValueError):
        count(5)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_candidates_are_distinct_structures(n):
    mats = {c.structure().matrix for c in enumerate_candidates(n)}
    assert len(mats) == count(n)


@given(st.integers(0, 1679))
def test_candidate_for_round_trip(k):
    c = candidate_at(8, k)
    assert candidate_for(c.structure()) == c
    assert all(i < j for i, j in c.matching)
    assert [i for i, _ in c.matching] == sorted(i for i, _ in c.matching)


def test_candidate_at_range():
    with pytest.raises(IndexError):
        candidate_at(4, 12)
    with pytest.raises(IndexError):
        candidate_at(4, -1)


def test_candidate_for_non_matching():
    a = abelian(2).algebra
    j = AlmostComplexStructure.from_images(a, {"e1": {"e1": 1, "e2": 1}, "e2": {"e1": -2, "e2": -1}})
    assert candidate_for(j) is None


def test_catalog_structure_is_candidate_21():
    c = candidate_for(G.j)
    assert c.index == 21
    assert c.matching == ((1, 2), (3, 6), (4, 5))
    assert c.signs == (-1, 1, -1)


def test_g68_integrable_hits():
    res = search(G.algebra, "integrable")
    assert res.total == 120
    assert res.hit_indices == [16, 18, 21, 23]
    for c in res.hits:
        assert verify_certificate(G.algebra, c).integrable


def test_class_hits_nest():
    for entry in (G, m0r(3), abelian(4)):
        hits = {cls: set(search(entry.algebra, cls).hit_indices) for cls in CLASSES}
        assert hits["abelian"] <= hits["nilpotent"] <= hits["integrable"]
        assert hits["complex_lie"] <= hits["nilpotent"]


def test_fast_paths_match_classification():
    for entry in (G, m0r(2), m0r(3)):
        hits = {cls: set(search(entry.algebra, cls).hit_indices) for cls in CLASSES}
        for c in enumerate_candidates(entry.algebra.dim):
            rep = classify(entry.algebra, c.structure())
            assert (c.index in hits["integrable"]) == rep.integrable
            assert (c.index in hits["abelian"]) == rep.abelian
            assert (c.index in hits["complex_lie"]) == rep.complex_lie
            assert (c.index in hits["nilpotent"]) == rep.nilpotent_structure


def test_abelian_r4_accepts_everything():
    res = search(abelian(4).algebra, "abelian")
    assert len(res.hits) == 12
    assert all(is_abelian_structure(abelian(4).algebra, c.structure())[0] for c in res.hits)


@pytest.mark.parametrize("n", [6, 8])
def test_filiform_has_no_hits(n):
    res = search(m0(n).algebra, "integrable")
    assert res.hits == []
    assert "none in ansatz" in res.summary()


def test_parallel_search_agrees():
    a = search(G.algebra, "integrable", workers=2, chunk=16)
    b = search(G.algebra, "integrable")
    assert a.hit_indices == b.hit_indices


def test_unknown_class():
    with pytest.raises(ValueError):
        search(G.algebra, "kahler")


def test_describe_and_dict():
    c = candidate_at(6, 21)
    assert isinstance(c, JCandidate)
    assert c.describe() == "Je1=-e2, Je3=e6, Je4=-e5"
    d = search(G.algebra).as_dict()
    assert d["hits"] == 4 and d["hit_list"][2]["index"] == 21
