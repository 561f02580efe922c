"""Lie algebras given by structure constants.

Only the brackets ``[e_i, e_j]`` with ``i < j`` are stored; the opposite
order is the negative and absent pairs are zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .exactlin import ZERO, Subspace, scalar, DimensionMismatch

__all__ = [
    "LieAlgebra",
    "GradedTag",
    "JacobiError",
    "NotNilpotentError",
    "bracket",
    "validate_jacobi",
    "lower_central_series",
    "nil_index",
    "a_sequence",
    "is_filiform",
    "direct_sum",
    "complexify",
    "derived_algebra",
    "unit",
]

FIELDS = ("rational", "gaussian")


class JacobiError(ValueError):
    def __init__(self, violations):
        self.violations = violations
        shown = ", ".join(f"({i + 1},{j + 1},{k + 1})" for i, j, k, _ in violations[:5])
        more = "" if len(violations) <= 5 else f" and {len(violations) - 5} more"
        super().__init__(f"Jacobi identity fails on basis triples {shown}{more}")


class NotNilpotentError(ValueError):
    pass


@dataclass(frozen=True)
class GradedTag:
    """Positive degree for each basis vector."""

    degrees: tuple

    def check(self, g: LieAlgebra) -> list:
        """Brackets that leave the grading, as ``(i, j, k)`` with a nonzero ``e_k`` component."""
        bad = []
        for (i, j), terms in g.sparse.items():
            for k, _ in terms:
                if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                    bad.append((i, j, k))
        return bad

    def graded_tail(self, g: LieAlgebra, m: int) -> Subspace:
        """``sum_{l >= m} g_l`` as a subspace."""
        return Subspace.span([unit(g.dim, k) for k, d in enumerate(self.degrees) if d >= m], g.dim)


def unit(n: int, k: int) -> tuple:
    v = [ZERO] * n
    v[k] = Fraction(1)
    return tuple(v)


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q or Q(i).

    ``brackets`` maps ``(i, j)`` with ``i < j`` to the coordinate vector of
    ``[e_i, e_j]``.  The Jacobi identity is checked on construction unless
    ``validate=False``.
    """

    __slots__ = ("name", "dim", "basis_names", "field", "brackets", "sparse", "grading")

    def __init__(
        self,
        basis_names: Sequence[str],
        brackets: Mapping,
        field: str = "rational",
        name: str = "g",
        grading: GradedTag | None = None,
        validate: bool = True,
    ):
        if field not in FIELDS:
            raise ValueError(f"unknown field {field!r}")
        names = tuple(basis_names)
        if len(set(names)) != len(names):
            raise ValueError("basis names must be unique")
        n = len(names)
        table = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"bracket index out of range: ({i}, {j})")
            if len(vec) != n:
                raise DimensionMismatch(f"bracket vector of length {len(vec)} in dimension {n}")
            vec = tuple(scalar(c) for c in vec)
            if i == j:
                if any(vec):
                    raise ValueError("[e_i, e_i] must vanish")
                continue
            if i > j:
                i, j, vec = j, i, tuple(-c for c in vec)
            if (i, j) in table:
                raise ValueError(f"duplicate bracket for pair ({names[i]}, {names[j]})")
            if any(vec):
                table[(i, j)] = vec
        self.name = name
        self.dim = n
        self.basis_names = names
        self.field = field
        self.brackets = dict(sorted(table.items()))
        # integral constants kept as int: int * int skips the Fraction machinery
        self.sparse = {k: tuple((m, _small(c)) for m, c in enumerate(v) if c) for k, v in self.brackets.items()}
        self.grading = grading
        if grading is not None and len(grading.degrees) != n:
            raise DimensionMismatch("grading length does not match dimension")
        if validate:
            bad = validate_jacobi(self)
            if bad:
                raise JacobiError(bad)

    @classmethod
    def from_relations(cls, basis_names, relations, **kw) -> LieAlgebra:
        """Build from ``{(a, b): {c: coeff, ...}}`` keyed by basis names."""
        names = list(basis_names)
        idx = {s: k for k, s in enumerate(names)}
        n = len(names)
        table = {}
        for (a, b), rhs in relations.items():
            i, j = idx[a], idx[b]
            vec = [ZERO] * n
            for c, coeff in rhs.items():
                vec[idx[c]] += scalar(coeff)
            if i > j:
                i, j, vec = j, i, [-x for x in vec]
            if (i, j) in table:
                table[(i, j)] = tuple(x + y for x, y in zip(table[(i, j)], vec))
            else:
                table[(i, j)] = tuple(vec)
        return cls(names, table, **kw)

    def index(self, name: str) -> int:
        return self.basis_names.index(name)

    def vector(self, terms: Mapping) -> tuple:
        """Coordinate vector from ``{name: coeff}``."""
        v = [ZERO] * self.dim
        for s, c in terms.items():
            v[self.index(s)] += scalar(c)
        return tuple(v)

    def basis_bracket(self, i: int, j: int) -> tuple:
        """Sparse ``[e_i, e_j]`` as ``((k, c), ...)``."""
        if i < j:
            return self.sparse.get((i, j), ())
        if i > j:
            return tuple((k, -c) for k, c in self.sparse.get((j, i), ()))
        return ()

    def is_abelian(self) -> bool:
        return not self.brackets

    def same_table(self, other: LieAlgebra) -> bool:
        return (self.basis_names, self.brackets) == (other.basis_names, other.brackets)

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim}, {len(self.brackets)} brackets, {self.field})"


def _small(c):
    return c.numerator if type(c) is Fraction and c.denominator == 1 else c


def _sparse_bracket(g: LieAlgebra, x: dict, y: dict) -> dict:
    out: dict = {}
    for i, a in x.items():
        for j, b in y.items():
            if i == j:
                continue
            ab = a * b
            for k, c in g.basis_bracket(i, j):
                nv = out.get(k, ZERO) + ab * c
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
    return out


def _densify(d: dict, n: int) -> tuple:
    return tuple(d.get(k, ZERO) for k in range(n))


def _nz(v) -> dict:
    return {k: x for k, x in enumerate(v) if x}


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> tuple:
    """Bilinear extension of the structure constants."""
    if len(x) != g.dim or len(y) != g.dim:
        raise DimensionMismatch(f"vectors must have length {g.dim}")
    return _densify(_sparse_bracket(g, _nz(x), _nz(y)), g.dim)


def validate_jacobi(g: LieAlgebra) -> list:
    """All basis triples ``(i, j, k)`` violating Jacobi, with the residual vector."""
    bad = []
    n = g.dim
    for i, j, k in combinations(range(n), 3):
        total: dict = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = dict(g.basis_bracket(b, c))
            if not inner:
                continue
            for m, x in _sparse_bracket(g, {a: 1}, inner).items():
                nv = total.get(m, ZERO) + x
                if nv:
                    total[m] = nv
                else:
                    total.pop(m, None)
        if total:
            bad.append((i, j, k, _densify(total, n)))
    return bad


def derived_algebra(g: LieAlgebra) -> Subspace:
    return Subspace.from_sparse([dict(t) for t in g.sparse.values()], g.dim)


def _bracket_with_all(g: LieAlgebra, sub: Subspace) -> Subspace:
    rows = []
    for y in sub.basis:
        yd = {k: _small(x) for k, x in enumerate(y) if x}
        for i in range(g.dim):
            r = _sparse_bracket(g, {i: 1}, yd)
            if r:
                rows.append(r)
    return Subspace.from_sparse(rows, g.dim)


def lower_central_series(g: LieAlgebra) -> list:
    """``[g^1, g^2, ...]`` ending with the zero subspace, or with the repeated
    term if the series stabilizes above zero (non-nilpotent input)."""
    series = [Subspace.full(g.dim)]
    while series[-1].dim:
        nxt = _bracket_with_all(g, series[-1])
        if nxt.dim == series[-1].dim:
            series.append(nxt)
            break
        series.append(nxt)
    return series


def _nilpotent_series(g: LieAlgebra) -> list:
    series = lower_central_series(g)
    if series[-1].dim:
        raise NotNilpotentError(
            f"{g.name}: descending central series stabilizes at dimension {series[-1].dim}"
        )
    return series


def nil_index(g: LieAlgebra) -> int:
    """Largest ``s`` with ``g^s != 0``; abelian algebras are 1-step."""
    series = _nilpotent_series(g)
    return max(len(series) - 1, 1) if g.dim else 0


def a_sequence(g: LieAlgebra) -> tuple:
    series = _nilpotent_series(g)
    return tuple(series[i].dim - series[i + 1].dim for i in range(len(series) - 1))


def is_filiform(g: LieAlgebra) -> bool:
    """``s(g) = dim g - 1``; algebras of dimension at most 2 never count."""
    if g.dim < 3:
        return False
    try:
        return nil_index(g) == g.dim - 1
    except NotNilpotentError:
        return False


def _unique_names(a: Sequence[str], b: Sequence[str]):
    if not set(a) & set(b):
        return tuple(a), tuple(b)
    return tuple(f"{s}_1" for s in a), tuple(f"{s}_2" for s in b)


def direct_sum(g: LieAlgebra, h: LieAlgebra, name: str | None = None) -> LieAlgebra:
    n, m = g.dim, h.dim
    na, nb = _unique_names(g.basis_names, h.basis_names)
    table = {}
    for (i, j), v in g.brackets.items():
        table[(i, j)] = tuple(v) + (ZERO,) * m
    for (i, j), v in h.brackets.items():
        table[(n + i, n + j)] = (ZERO,) * n + tuple(v)
    grading = None
    if g.grading is not None and h.grading is not None:
        grading = GradedTag(g.grading.degrees + h.grading.degrees)
    field = "gaussian" if "gaussian" in (g.field, h.field) else "rational"
    return LieAlgebra(
        na + nb, table, field=field, name=name or f"{g.name}+{h.name}", grading=grading, validate=False
    )


def complexify(g: LieAlgebra) -> LieAlgebra:
    """Same structure constants over Q(i)."""
    return LieAlgebra(
        g.basis_names, g.brackets, field="gaussian", name=f"{g.name}^C", grading=g.grading, validate=False
    )
