import json

import pytest

from nilcx.bounds import (
    check_abstract_identity,
    check_b1_bound,
    check_complex_lie_bounds,
    check_e_bound,
    check_filiform_corollary,
    check_ge5,
    check_main_estimate,
    check_mainlemma_consequence,
    check_nilpotent_bound,
    check_upper_bound,
    evaluate,
    evaluate_corpus,
    facts,
    main_estimate_witness,
)
from nilcx.catalog import abelian, b_family, c_family, corpus, d_family, g68, m0, m0r
from nilcx.jsearch import enumerate_candidates

REPORTS = evaluate_corpus()


@pytest.mark.parametrize("report", REPORTS, ids=lambda r: r.target)
def test_corpus_bounds_hold(report):
    assert report.all_hold
    for c in report.checks:
        assert c.status in ("pass", "skipped")
        assert (c.holds is None) == (not c.hypothesis_met)


def test_g68_report():
    e = g68()
    r = evaluate(e.algebra, e.j, e.name)
    assert r.get("e_bound").lhs == 6 and r.get("e_bound").sharp
    assert r.get("ge5").lhs == 5 and r.get("ge5").sharp
    assert r.get("upper_bound").lhs == 4 and r.get("upper_bound").sharp
    assert r.get("nilpotent_bound").status == "skipped"
    assert r.get("nilpotent_bound").lhs == 4


def test_facts_g68():
    e = g68()
    f = facts(e.algebra, e.j)
    assert (f.dim, f.s, f.b1, f.equality_count) == (6, 4, 2, 1)
    assert f.integrable and not f.nilpotent and not f.complex_lie
    assert f.v10_dims == (0, 1, 1, 2, 3)


def test_nilpotent_bound_sharp_on_b_family():
    for n in range(2, 6):
        e = b_family(n)
        c = check_nilpotent_bound(e.algebra, e.j)
        assert c.holds and c.sharp
        assert check_b1_bound(e.algebra, e.j).holds


def test_complex_lie_bounds():
    for n in range(2, 6):
        e = m0r(n)
        s_check, b_check = check_complex_lie_bounds(e.algebra, e.j)
        assert s_check.holds and b_check.holds
        assert s_check.sharp and b_check.sharp
    a = abelian(2)
    assert all(c.holds is None for c in check_complex_lie_bounds(a.algebra, a.j))


def test_hypothesis_gates_skip():
    e = c_family(5)
    for check in (check_e_bound, check_ge5, check_upper_bound, check_b1_bound):
        c = check(e.algebra, e.j)
        assert c.holds is None and c.status == "skipped"


def test_bounds_hold_for_every_integrable_candidate():
    e = g68()
    for c in enumerate_candidates(6):
        r = evaluate(e.algebra, c.structure())
        assert r.all_hold


@pytest.mark.parametrize("n", [8, 9, 12, 13])
def test_mainlemma_non_vacuous_on_d_family(n):
    e = d_family(n)
    c = check_mainlemma_consequence(e.algebra, e.j)
    assert c.hypothesis_met and c.holds
    assert c.lhs >= 2
    assert c.detail["runs"]


def test_filiform_corollary():
    checks = check_filiform_corollary([m0(4), m0(6), m0(8), g68()])
    assert [c.detail["algebra"] for c in checks] == ["m0:4", "m0:6", "m0:8"]
    assert all(c.holds for c in checks)
    assert checks[1].detail["integrable_hits"] == 0
    assert checks[2].detail["candidates"] == 1680


def test_main_estimate_witnesses():
    checks = check_main_estimate(range(4, 31, 2))
    assert len(checks) == 14
    assert all(c.holds and c.sharp for c in checks)
    assert main_estimate_witness(6).name == "D:4"
    assert main_estimate_witness(8).name == "D:5"
    assert main_estimate_witness(10).name == "D+R:6"
    with pytest.raises(ValueError):
        main_estimate_witness(7)
    with pytest.raises(ValueError):
        main_estimate_witness(2)


def test_abstract_identity():
    assert all(c.holds for c in check_abstract_identity(range(1, 25)))


def test_report_dict_is_plain():
    r = evaluate(g68().algebra, g68().j, "g6_8")
    json.dumps(r.as_dict())
    assert {c["name"] for c in r.as_dict()["checks"]} >= {"e_bound", "ge5", "mainlemma"}


def test_corpus_covers_defaults():
    assert len(REPORTS) == len([e for e in corpus() if e.j is not None])
