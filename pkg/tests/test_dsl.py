from fractions import Fraction

import pytest
from hypothesis import given

from nilcx.catalog import corpus, g68
from nilcx.dsl import ParseError, emit_algebra, emit_j, format_expr, parse_algebra, parse_j
from nilcx.exactlin import I, GaussianRational
from strategies import vectors

HEAD = "algebra t\nbasis a b c\n"


def test_parse_g68_fixture(fixtures):
    g = parse_algebra((fixtures / "g6_8.lie").read_text())
    assert g.same_table(g68().algebra)
    assert g.grading.degrees == (1, 1, 2, 3, 3, 4)
    J = parse_j((fixtures / "g6_8.J").read_text(), g)
    assert J == g68().j


@pytest.mark.parametrize("stem", ["g6_8", "b4", "d9", "m0r4", "c5", "m0_6", "h3", "heis_c"])
def test_fixture_round_trip(fixtures, stem):
    text = (fixtures / f"{stem}.lie").read_text()
    g = parse_algebra(text)
    assert emit_algebra(g) == text
    jpath = fixtures / f"{stem}.J"
    if jpath.exists():
        jt = jpath.read_text()
        assert emit_j(parse_j(jt, g), g) == jt


@pytest.mark.parametrize("entry", corpus(), ids=lambda e: e.name)
def test_catalog_round_trip(entry):
    g = parse_algebra(emit_algebra(entry.algebra))
    assert g.same_table(entry.algebra)
    if entry.j is not None:
        assert parse_j(emit_j(entry.j, g), g) == entry.j


def test_coefficients():
    g = parse_algebra(HEAD + "field gaussian\nbracket a b = 1/2 c\nbracket a c = (1+i/2)*c\n", validate=False)
    assert g.brackets[(0, 1)][2] == Fraction(1, 2)
    assert g.brackets[(0, 2)][2] == GaussianRational(1, Fraction(1, 2))
    h = parse_algebra(HEAD + "field gaussian\nbracket a b = 2i c - i/3 a\n", validate=False)
    assert h.brackets[(0, 1)] == (-I / 3, 0, 2 * I)


def test_reversed_pair_flips_sign():
    g = parse_algebra(HEAD + "bracket b a = c\n")
    assert g.brackets[(0, 1)] == (0, 0, -1)


def test_comments_and_zero():
    g = parse_algebra(HEAD + "# nothing\nbracket a b = 0   # explicit zero\n")
    assert g.brackets.get((0, 1), (0, 0, 0)) == (0, 0, 0)


@pytest.mark.parametrize(
    "text, fragment, line",
    [
        (HEAD + "bracket a d = c\n", "unknown basis name 'd'", 3),
        (HEAD + "bracket a b = c\nbracket a b = c\n", "first given on line 3", 4),
        (HEAD + "bracket a b = i c\n", "requires 'field gaussian'", 3),
        (HEAD + "bracket a b = c c2\n", "expected '+' or '-'", 3),
        (HEAD + "bracket a a = c\n", "always zero", 3),
        (HEAD + "bracket a b c\n", "expected '='", 3),
        ("basis a i\n", "invalid basis name 'i'", 1),
        ("basis a a\n", "duplicate basis name", 1),
        ("bracket a b = c\n", "bracket before basis", 1),
        ("field real\n", "unknown field", 1),
        ("wibble\n", "unknown directive", 1),
    ],
)
def test_errors_carry_line(text, fragment, line):
    with pytest.raises(ParseError) as exc:
        parse_algebra(text)
    assert fragment in str(exc.value)
    assert exc.value.line == line


def test_missing_basis():
    with pytest.raises(ParseError, match="missing basis"):
        parse_algebra("algebra x\n")


def test_grading_length_mismatch():
    with pytest.raises(ParseError, match="grading lists 2 degrees"):
        parse_algebra(HEAD + "grading 1 2\n")


def test_jacobi_failure_lists_triples(fixtures):
    with pytest.raises(ParseError, match=r"Jacobi identity fails .*\(e1,e2,e3\)"):
        parse_algebra((fixtures / "bad_jacobi.lie").read_text())
    g = parse_algebra((fixtures / "bad_jacobi.lie").read_text(), validate=False)
    assert g.dim == 4


def test_j_errors():
    g = g68().algebra
    good = emit_j(g68().j, g)
    with pytest.raises(ParseError, match=r"J\^2 != -1 on e1") as exc:
        parse_j(good.replace("J e1 = -e2", "J e1 = e2"), g)
    assert exc.value.line == 1
    with pytest.raises(ParseError, match="not specified on e6"):
        parse_j("\n".join(good.splitlines()[:5]), g)
    with pytest.raises(ParseError, match="given twice"):
        parse_j(good + "J e1 = -e2\n", g)
    with pytest.raises(ParseError, match="odd dimension"):
        parse_j("", parse_algebra(HEAD))


@given(vectors(4))
def test_format_expr_round_trip(v):
    names = ["a", "b", "c", "d"]
    text = format_expr(v, names)
    g = parse_algebra("basis a b c d x y\nfield gaussian\nbracket x y = " + text + "\n", validate=False)
    assert g.brackets.get((4, 5), (0,) * 6)[:4] == tuple(v)
