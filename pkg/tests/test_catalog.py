import pytest

from nilcx.catalog import (
    FAMILIES,
    abelian,
    b_family,
    c_family,
    corpus,
    d_dimension,
    d_family,
    d_family_plus_r,
    g68,
    names,
    resolve,
)
from nilcx.cecohom import betti, betti_numbers
from nilcx.cxstructs import classify, is_integrable
from nilcx.liecore import a_sequence, lower_central_series, nil_index, validate_jacobi

ALL = corpus(integrable_only=False)


@pytest.mark.parametrize("entry", ALL, ids=lambda e: e.name)
def test_expected_invariants(entry):
    g, exp = entry.algebra, entry.expected
    assert not validate_jacobi(g)
    assert g.dim == exp["dim"]
    assert nil_index(g) == exp["s"]
    assert betti(g, 1) == exp["b1"]
    if "a" in exp:
        assert a_sequence(g) == exp["a"]
    if "lcs_dims" in exp:
        assert tuple(v.dim for v in lower_central_series(g)) == exp["lcs_dims"]


@pytest.mark.parametrize("entry", ALL, ids=lambda e: e.name)
def test_expected_classification(entry):
    if entry.j is None:
        return
    rep = classify(entry.algebra, entry.j)
    keys = {"integrable": "integrable", "abelian": "abelian", "complex_lie": "complex_lie", "nilpotent": "nilpotent_structure"}
    for k, attr in keys.items():
        if k in entry.expected:
            assert getattr(rep, attr) == entry.expected[k], k


@pytest.mark.parametrize("entry", ALL, ids=lambda e: e.name)
def test_grading_is_compatible(entry):
    if entry.grading is not None:
        assert entry.grading.check(entry.algebra) == []


@pytest.mark.parametrize("n", range(1, 13))
def test_d_family_dimensions(n):
    assert d_family(n).algebra.dim == d_dimension(n)
    assert d_family_plus_r(n).algebra.dim == d_dimension(n) + 1
    assert (d_family(n).j is not None) == (n % 4 in (0, 1))
    assert (d_family_plus_r(n).j is not None) == (n % 4 in (2, 3))


def test_d4_and_g68_share_invariants():
    a, b = d_family(4).algebra, g68().algebra
    assert a.dim == b.dim
    assert nil_index(a) == nil_index(b)
    assert a_sequence(a) == a_sequence(b)
    assert betti_numbers(a) == betti_numbers(b)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_c_family_defect(n):
    e = c_family(n)
    ok, witness = is_integrable(e.algebra, e.j)
    assert not ok and witness is not None
    assert e.note


def test_c4_integrable():
    e = c_family(4)
    assert is_integrable(e.algebra, e.j)[0]


def test_b_family_grows_nilpotency():
    for n in range(2, 8):
        e = b_family(n)
        assert nil_index(e.algebra) == n
        assert classify(e.algebra, e.j).abelian


def test_resolve():
    assert resolve("g6_8").name == "g6_8"
    assert resolve("D:5").algebra.dim == 8
    assert resolve("D+R:2").algebra.dim == 4
    for bad in ("nope", "D:x", "Q:3", "D"):
        with pytest.raises(KeyError):
            resolve(bad)
    assert set(names()) == {"g6_8"} | {f"{k}:<n>" for k in FAMILIES}


def test_abelian_odd_has_no_j():
    assert abelian(3).j is None
    assert abelian(4).j is not None


def test_constructors_reject_bad_parameters():
    with pytest.raises(ValueError):
        d_family(0)
    with pytest.raises(ValueError):
        abelian(0)
