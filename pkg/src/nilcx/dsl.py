"""Line-oriented text format for Lie algebras and almost complex structures.

Algebra files::

    algebra g6_8
    field rational
    basis e1 e2 e3 e4 e5 e6
    grading 1 1 2 3 3 4        # optional
    bracket e1 e2 = e3
    bracket e1 e4 = 1/2 e6 - e5

J files hold one ``J name = expr`` line per basis vector.  Coefficients are
``p/q`` rationals; imaginary ones (``i``, ``2i``, ``i/2``, ``(1+i/2)``)
need ``field gaussian``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .cxstructs import AlmostComplexStructure, InvalidStructure
from .exactlin import I, ZERO, Matrix, format_combination, is_real
from .liecore import FIELDS, GradedTag, LieAlgebra, validate_jacobi

__all__ = ["ParseError", "parse_algebra", "parse_j", "emit_algebra", "emit_j", "format_expr"]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message, self.line, self.col = message, line, col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + message)


NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.']*")
COEFF = re.compile(r"\(([^()]*)\)|(\d+(?:/\d+)?i?(?:/\d+)?|i(?:/\d+)?)(?=[\s*]|$)")
CPART = re.compile(r"([+-]?)(?:(\d*)i(?:/(\d+))?|(\d+)(?:/(\d+))?)")


def _complex_literal(text: str, line: int, col: int):
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty coefficient", line, col)
    pos, total = 0, ZERO
    while pos < len(s):
        m = CPART.match(s, pos)
        if not m or m.end() == pos or (pos and not m.group(1)):
            raise ParseError(f"malformed coefficient {text!r}", line, col)
        total = total + _part(m)
        pos = m.end()
    return total


def _part(m):
    sign = -1 if m.group(1) == "-" else 1
    if m.group(4) is not None:
        return sign * Fraction(int(m.group(4)), int(m.group(5) or 1))
    num = int(m.group(2)) if m.group(2) else 1
    return sign * Fraction(num, int(m.group(3) or 1)) * I


def _coefficient(tok: str, line: int, col: int):
    # bare tokens like 2i or i/2 or 3/4
    m = CPART.fullmatch(tok)
    if not m:
        raise ParseError(f"malformed coefficient {tok!r}", line, col)
    return _part(m)


def _parse_expr(text: str, offset: int, line: int, names: dict, gaussian: bool) -> dict:
    """``{index: coeff}`` for a linear combination of basis names."""
    out: dict = {}
    pos, n = 0, len(text)
    first = True

    def skip(p):
        while p < n and text[p].isspace():
            p += 1
        return p

    pos = skip(pos)
    if text[pos:].strip() == "0":
        return out
    while True:
        pos = skip(pos)
        sign = 1
        if pos < n and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos = skip(pos + 1)
        elif not first:
            raise ParseError("expected '+' or '-' between terms", line, offset + pos + 1)
        if pos >= n:
            raise ParseError("expected a term", line, offset + pos + 1)
        coeff = Fraction(1)
        if text[pos] == "-" or text[pos] == "+":
            s2 = -1 if text[pos] == "-" else 1
            pos = skip(pos + 1)
            sign *= s2
        m = COEFF.match(text, pos)
        if m:
            col = offset + pos + 1
            coeff = _complex_literal(m.group(1), line, col) if m.group(1) is not None else _coefficient(m.group(2), line, col)
            if not is_real(coeff) and not gaussian:
                raise ParseError("imaginary coefficient requires 'field gaussian'", line, col)
            pos = skip(m.end())
            if pos < n and text[pos] == "*":
                pos = skip(pos + 1)
        m = NAME.match(text, pos)
        if not m:
            raise ParseError("expected a basis name", line, offset + pos + 1)
        name = m.group(0)
        if name not in names:
            raise ParseError(f"unknown basis name {name!r}", line, offset + pos + 1)
        k = names[name]
        nv = out.get(k, ZERO) + sign * coeff
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
        pos = skip(m.end())
        first = False
        if pos >= n:
            return out


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            yield no, body


def parse_algebra(text: str, validate: bool = True) -> LieAlgebra:
    name, field, basis, grading = "g", "rational", None, None
    brackets: dict = {}
    seen: dict = {}
    idx: dict = {}
    for no, body in _lines(text):
        stripped = body.lstrip()
        indent = len(body) - len(stripped)
        key, _, rest = stripped.partition(" ")
        rest_col = indent + len(key) + 2
        if key == "algebra":
            if not re.fullmatch(r"\S+", rest.strip()):
                raise ParseError("algebra needs a single-word name", no, rest_col)
            name = rest.strip()
        elif key == "field":
            field = rest.strip()
            if field not in FIELDS:
                raise ParseError(f"unknown field {field!r}; expected rational or gaussian", no, rest_col)
        elif key == "basis":
            if basis is not None:
                raise ParseError("basis declared twice", no, indent + 1)
            basis = rest.split()
            if not basis:
                raise ParseError("empty basis", no, rest_col)
            for b in basis:
                if not NAME.fullmatch(b) or b == "i":
                    raise ParseError(f"invalid basis name {b!r}", no, body.find(b) + 1)
            if len(set(basis)) != len(basis):
                raise ParseError("duplicate basis name", no, rest_col)
            idx = {b: k for k, b in enumerate(basis)}
        elif key == "grading":
            try:
                grading = tuple(int(x) for x in rest.split())
            except ValueError:
                raise ParseError("grading must list integers", no, rest_col) from None
        elif key == "bracket":
            if basis is None:
                raise ParseError("bracket before basis", no, indent + 1)
            lhs, eq, rhs = rest.partition("=")
            if not eq:
                raise ParseError("expected '='", no, rest_col + len(rest))
            pair = lhs.split()
            if len(pair) != 2:
                raise ParseError("bracket needs two basis names", no, rest_col)
            for p in pair:
                if p not in idx:
                    raise ParseError(f"unknown basis name {p!r}", no, body.find(p, indent + len(key)) + 1)
            i, j = idx[pair[0]], idx[pair[1]]
            if i == j:
                raise ParseError(f"[{pair[0]}, {pair[0]}] is always zero", no, rest_col)
            key2 = (min(i, j), max(i, j))
            if key2 in seen:
                raise ParseError(
                    f"duplicate bracket for pair ({basis[key2[0]]}, {basis[key2[1]]}), first given on line {seen[key2]}",
                    no, rest_col,
                )
            seen[key2] = no
            vec = _parse_expr(rhs, rest_col + len(lhs), no, idx, field == "gaussian")
            if i > j:
                vec = {k: -v for k, v in vec.items()}
            brackets[key2] = tuple(vec.get(k, ZERO) for k in range(len(basis)))
        else:
            raise ParseError(f"unknown directive {key!r}", no, indent + 1)
    if basis is None:
        raise ParseError("missing basis line")
    tag = None
    if grading is not None:
        if len(grading) != len(basis):
            raise ParseError(f"grading lists {len(grading)} degrees for {len(basis)} basis vectors")
        tag = GradedTag(grading)
    g = LieAlgebra(basis, brackets, field=field, name=name, grading=tag, validate=False)
    if validate:
        bad = validate_jacobi(g)
        if bad:
            shown = ", ".join(f"({basis[i]},{basis[j]},{basis[k]})" for i, j, k, _ in bad[:5])
            raise ParseError(f"Jacobi identity fails on {len(bad)} triple(s): {shown}")
    return g


def parse_j(text: str, g: LieAlgebra) -> AlmostComplexStructure:
    n = g.dim
    idx = {b: k for k, b in enumerate(g.basis_names)}
    if n % 2:
        raise ParseError(f"odd dimension {n} admits no almost complex structure")
    cols: dict = {}
    lines_by_col: dict = {}
    for no, body in _lines(text):
        stripped = body.lstrip()
        indent = len(body) - len(stripped)
        m = re.match(r"J\s+(\S+)\s*=", stripped)
        if not m:
            raise ParseError("expected 'J <name> = <expr>'", no, indent + 1)
        src = m.group(1)
        if src not in idx:
            raise ParseError(f"unknown basis name {src!r}", no, indent + m.start(1) + 1)
        if idx[src] in cols:
            raise ParseError(f"J {src} given twice", no, indent + 1)
        vec = _parse_expr(stripped[m.end():], indent + m.end(), no, idx, False)
        cols[idx[src]] = vec
        lines_by_col[idx[src]] = no
    missing = [g.basis_names[k] for k in range(n) if k not in cols]
    if missing:
        raise ParseError(f"J not specified on {', '.join(missing)}")
    entries = [ZERO] * (n * n)
    for j, vec in cols.items():
        for i, c in vec.items():
            entries[i * n + j] = c
    try:
        return AlmostComplexStructure(Matrix(n, n, entries))
    except InvalidStructure as exc:
        if exc.column is not None:
            name = g.basis_names[exc.column]
            raise ParseError(f"J^2 != -1 on {name}: J(J {name}) != -{name}", lines_by_col[exc.column]) from None
        raise ParseError(str(exc)) from None


def format_expr(vec, names) -> str:
    """Canonical ``a x + b y - c z`` text for a coordinate vector."""
    return format_combination((c, names[k]) for k, c in enumerate(vec))


def emit_algebra(g: LieAlgebra) -> str:
    lines = [f"algebra {g.name}", f"field {g.field}", "basis " + " ".join(g.basis_names)]
    if g.grading is not None:
        lines.append("grading " + " ".join(str(d) for d in g.grading.degrees))
    for (i, j), vec in g.brackets.items():
        lines.append(f"bracket {g.basis_names[i]} {g.basis_names[j]} = {format_expr(vec, g.basis_names)}")
    return "\n".join(lines) + "\n"


def emit_j(J: AlmostComplexStructure, g: LieAlgebra) -> str:
    lines = []
    for j, name in enumerate(g.basis_names):
        col = [J.matrix[i, j] for i in range(g.dim)]
        lines.append(f"J {name} = {format_expr(col, g.basis_names)}")
    return "\n".join(lines) + "\n"
