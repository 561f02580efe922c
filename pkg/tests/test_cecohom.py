from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from nilcx.catalog import abelian, b_family, d_family, g68, heisenberg, m0, m0r
from nilcx.cecohom import (
    ExteriorForm,
    annihilator,
    betti,
    betti_numbers,
    change_of_coframe,
    check_v_annihilator_identity,
    coboundary_space,
    cocycle_space,
    covector,
    d,
    d_matrix,
    one_form,
    two_form_from_matrix,
    two_form_matrix,
    v_filtration,
    wedge_contains,
    wedge_span,
)
from nilcx.exactlin import I, Matrix, Subspace, rank
from nilcx.liecore import lower_central_series, unit
from strategies import small_rationals, vectors

G68 = g68().algebra
SMALL = [g68(), heisenberg(2), b_family(3), m0(5), m0r(3), d_family(4), abelian(3)]


def forms(n, k):
    keys = list(combinations(range(n), k))
    return st.dictionaries(st.sampled_from(keys), small_rationals, max_size=4).map(
        lambda c: ExteriorForm(n, k, c)
    )


def test_g68_differentials():
    e = lambda *ks: ExteriorForm(6, len(ks), {tuple(k - 1 for k in ks): 1})
    assert d(G68, covector(6, 0)) == ExteriorForm.zero(6, 2)
    assert d(G68, covector(6, 2)) == e(1, 2)
    assert d(G68, covector(6, 5)) == e(1, 4) + e(2, 5)
    assert d(G68, covector(6, 3)) == e(1, 3)


def test_wedge_signs():
    a, b = covector(3, 0), covector(3, 1)
    assert a.wedge(b) == -(b.wedge(a))
    assert a.wedge(a) == ExteriorForm.zero(3, 2)
    assert ExteriorForm(3, 2, {(1, 0): 1}) == ExteriorForm(3, 2, {(0, 1): -1})


@given(forms(5, 1), forms(5, 2), forms(5, 1))
def test_wedge_associative(a, b, c):
    assert (a ^ b) ^ c == a ^ (b ^ c)


@given(forms(4, 1), forms(4, 2))
def test_graded_commutativity(a, b):
    assert a ^ b == b ^ a
    assert a ^ a == ExteriorForm.zero(4, 2)


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.name)
def test_d_squared_vanishes(entry):
    g = entry.algebra
    n = g.dim
    for k in range(n - 1):
        for key in combinations(range(n), k + 1):
            w = ExteriorForm(n, k + 1, {key: 1})
            assert not d(g, d(g, w))


@given(forms(6, 1), forms(6, 2))
def test_leibniz_rule(a, b):
    lhs = d(G68, a ^ b)
    rhs = (d(G68, a) ^ b) - (a ^ d(G68, b))
    assert lhs == rhs


def test_d_matrix_shape_and_rank():
    m = d_matrix(G68, 1)
    assert (m.rows, m.cols) == (15, 6)
    assert rank(m) == 4
    assert cocycle_space(G68, 1) == Subspace.span([unit(6, 0), unit(6, 1)], 6)
    assert d_matrix(G68, -1).rows == 1
    assert d_matrix(G68, 6).cols == 1 and d_matrix(G68, 6).rows == 0


@pytest.mark.parametrize(
    "entry, b1",
    [(g68(), 2), (b_family(4), 3), (heisenberg(2), 4), (m0r(4), 4), (abelian(4), 4)],
    ids=lambda x: getattr(x, "name", str(x)),
)
def test_b1(entry, b1):
    assert betti(entry.algebra, 1) == b1


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.name)
def test_euler_characteristic_and_poincare_duality(entry):
    bs = betti_numbers(entry.algebra)
    assert sum((-1) ** k * b for k, b in enumerate(bs)) == 0
    assert bs == bs[::-1]
    assert bs[0] == 1


def test_heisenberg_cohomology():
    assert betti_numbers(heisenberg(1).algebra) == (1, 2, 2, 1)


def test_coboundaries_inside_cocycles():
    for k in range(1, 5):
        z, b = cocycle_space(G68, k), coboundary_space(G68, k)
        assert all(v in z for v in b.basis)
        assert z.dim - b.dim == betti(G68, k)


def test_annihilator_examples():
    assert annihilator(G68, Subspace.zero(6)) == Subspace.full(6)
    assert annihilator(G68, Subspace.full(6)) == Subspace.zero(6)
    g2 = lower_central_series(G68)[1]
    assert annihilator(G68, g2) == Subspace.span([unit(6, 0), unit(6, 1)], 6)


def test_v_filtration_g68():
    assert [v.dim for v in v_filtration(G68)] == [0, 2, 3, 5, 6]


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.name)
def test_v_filtration_is_annihilator_of_lcs(entry):
    assert check_v_annihilator_identity(entry.algebra)


def test_two_form_matrix_round_trip():
    w = ExteriorForm(4, 2, {(0, 1): 2, (1, 3): Fraction(-1, 2), (0, 2): I})
    m = two_form_matrix(w)
    assert all(m[i][j] == -m[j][i] for i in range(4) for j in range(4))
    assert two_form_from_matrix(m) == w


@given(vectors(4), vectors(4), vectors(4), vectors(4))
def test_change_of_coframe(a, b, c, e):
    rows = [a, b, c, e]
    if rank(Matrix.from_rows(rows, 4)) < 4:
        return
    w = one_form(a) ^ one_form(c)
    m = change_of_coframe(w, rows)
    # theta_0 ^ theta_2 has the single coefficient 1 in its own coframe
    assert m[0][2] == 1 and m[2][0] == -1
    assert sum(1 for r in m for x in r if x) == 2


@given(st.lists(vectors(5), min_size=1, max_size=2), st.lists(vectors(5), min_size=0, max_size=2), forms(5, 2))
def test_wedge_contains_agrees_with_brute_force(arows, extra, w):
    a = Subspace.span(arows, 5)
    b = Subspace.span(arows + extra, 5)
    assert wedge_contains(a, b, w) == (w.vector() in wedge_span(a, b))
    for x in a.basis:
        for y in b.basis:
            assert wedge_contains(a, b, one_form(x) ^ one_form(y))


def test_wedge_contains_requires_nesting():
    a = Subspace.span([unit(3, 0)], 3)
    b = Subspace.span([unit(3, 1)], 3)
    with pytest.raises(ValueError):
        wedge_contains(a, b, ExteriorForm.zero(3, 2))
