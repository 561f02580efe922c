from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nilcx.exactlin import (
    I,
    GaussianRational,
    Matrix,
    Subspace,
    conj,
    contains,
    format_combination,
    format_scalar,
    inverse,
    kernel,
    rank,
    rref,
    solve,
    subspace_intersect,
    subspace_sum,
)
from strategies import gaussians, matrices, scalars, small_rationals, vectors

F = Fraction


# --- Q(i) field axioms ------------------------------------------------------


@given(scalars, scalars, scalars)
def test_field_associativity_and_distributivity(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(scalars, scalars)
def test_field_commutativity(a, b):
    assert a + b == b + a
    assert a * b == b * a


@given(scalars)
def test_inverses(a):
    assert a - a == 0
    if a:
        assert a * (1 / a) == 1


@given(gaussians, gaussians)
def test_conjugation_is_a_field_automorphism(a, b):
    assert conj(a * b) == conj(a) * conj(b)
    assert conj(a + b) == conj(a) + conj(b)
    assert conj(conj(a)) == a


def test_real_results_collapse_to_fraction():
    z = GaussianRational(F(1, 2), 3)
    w = z * conj(z)
    assert type(w) is Fraction and w == F(37, 4)
    assert type(I * I) is Fraction and I * I == -1


def test_gaussian_hash_agrees_with_fraction():
    assert hash(GaussianRational(F(3, 4), 0)) == hash(F(3, 4))
    assert GaussianRational(2, 0) == 2


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        I / GaussianRational(0, 0)


@pytest.mark.parametrize(
    "x, text",
    [
        (F(1, 2), "1/2"),
        (F(-3), "-3"),
        (2 * I, "2i"),
        (-I, "-i"),
        (F(1, 2) * I, "i/2"),
        (F(-3, 2) * I, "-3i/2"),
        (F(1, 3) - F(3, 2) * I, "1/3-3i/2"),
    ],
)
def test_format_scalar(x, text):
    assert format_scalar(x) == text


def test_format_combination():
    terms = [(F(1), "a"), (F(-1, 2), "b"), (F(1, 2) * I, "c"), (F(0), "d"), (1 + I, "e")]
    assert format_combination(terms) == "a - 1/2 b + i/2 c + (1+i) e"
    assert format_combination([]) == "0"


# --- matrices ----------------------------------------------------------------


@given(matrices(3, 4))
def test_rref_idempotent(rows):
    m = Matrix.from_rows(rows, 4)
    assert rref(rref(m)) == rref(m)


@given(matrices(3, 5))
def test_rank_of_transpose(rows):
    m = Matrix.from_rows(rows, 5)
    assert rank(m) == rank(m.transpose())


@given(matrices(4, 5))
def test_rank_nullity(rows):
    m = Matrix.from_rows(rows, 5)
    ker = kernel(m)
    assert rank(m) + ker.dim == 5
    for v in ker.basis:
        assert not any(m.apply(v))


@given(matrices(3, 3, st.one_of(small_rationals, gaussians)))
def test_inverse_or_singular(rows):
    m = Matrix.from_rows(rows, 3)
    if rank(m) < 3:
        with pytest.raises(ZeroDivisionError):
            inverse(m)
    else:
        assert m @ inverse(m) == Matrix.identity(3)


@given(matrices(3, 4), vectors(4))
def test_solve_consistent_system(rows, x):
    m = Matrix.from_rows(rows, 4)
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


def test_solve_inconsistent():
    m = Matrix.from_rows([[1, 0], [1, 0]], 2)
    assert solve(m, (F(1), F(2))) is None


def test_gaussian_kernel():
    # J = [[0, 1], [-1, 0]] has +i eigenvector (1, i)
    j = Matrix.from_rows([[0, 1], [-1, 0]], 2)
    shifted = j - Matrix.identity(2).scale(I)
    ker = kernel(shifted)
    assert ker.dim == 1
    v = ker.basis[0]
    assert j.apply(v) == tuple(I * x for x in v)


# --- subspaces ----------------------------------------------------------------


@given(matrices(2, 4), matrices(2, 4))
def test_dimension_formula(a, b):
    sa, sb = Subspace.span(a, 4), Subspace.span(b, 4)
    assert subspace_sum(sa, sb).dim + subspace_intersect(sa, sb).dim == sa.dim + sb.dim


@given(matrices(2, 4), matrices(2, 4), matrices(1, 4))
def test_modular_law(a, b, c):
    # for A inside C: A + (B meet C) = (A + B) meet C
    sa = Subspace.span(a, 4)
    sc = subspace_sum(sa, Subspace.span(c, 4))
    sb = Subspace.span(b, 4)
    assert subspace_sum(sa, subspace_intersect(sb, sc)) == subspace_intersect(subspace_sum(sa, sb), sc)


@given(matrices(3, 4))
def test_span_is_canonical(rows):
    s = Subspace.span(rows, 4)
    assert Subspace.span(list(reversed(rows)), 4) == s
    assert Subspace.span(s.basis, 4) == s


def test_membership_and_coordinates():
    s = Subspace.span([(1, 1, 0), (0, 1, 1)], 3)
    v = (F(2), F(5), F(3))
    assert v in s
    c = s.coordinates(v)
    assert tuple(sum(ci * b[k] for ci, b in zip(c, s.basis)) for k in range(3)) == v
    assert (1, 0, 0) not in s
    assert contains(Subspace.full(3), s) and not contains(s, Subspace.full(3))


def test_conjugate_subspace():
    s = Subspace.span([(1, I)], 2)
    assert s.conjugate() == Subspace.span([(1, -I)], 2)
    assert not s.is_real()
    assert subspace_intersect(s, s.conjugate()).dim == 0


def test_sparse_int_rows_stay_exact():
    s = Subspace.from_sparse([{0: 2, 1: 3}, {1: 4, 2: 1}], 3)
    assert all(type(x) is Fraction for row in s.basis for x in row)
    assert s.basis[1] == (0, 1, Fraction(1, 4))
