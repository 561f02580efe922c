"""Chevalley-Eilenberg cochains: exterior forms on g*, the differential,
Betti numbers and the annihilator filtration of g*.

The differential on covectors is ``d e^k = sum_{i<j} c_ij^k e^i ^ e^j``
(no sign), i.e. ``d f(X, Y) = f([X, Y])``, extended as a graded derivation.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .exactlin import ZERO, Matrix, Subspace, conj, format_combination, kernel, scalar, sparse_rank
from .liecore import LieAlgebra, NotNilpotentError, lower_central_series, _nz, _sparse_bracket, unit

__all__ = [
    "ExteriorForm",
    "covector",
    "one_form",
    "d",
    "d_basis",
    "d_matrix",
    "betti",
    "betti_numbers",
    "annihilator",
    "vectors_killed_by",
    "v_filtration",
    "check_v_annihilator_identity",
    "cocycle_space",
    "coboundary_space",
    "two_form_matrix",
    "two_form_from_matrix",
    "wedge_span",
    "wedge_contains",
]


def _sort_sign(idx: Sequence[int]):
    """Sorted tuple and permutation sign, or ``(None, 0)`` on a repeated index."""
    a = list(idx)
    sign = 1
    for i in range(1, len(a)):
        j = i
        while j > 0 and a[j - 1] > a[j]:
            a[j - 1], a[j] = a[j], a[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and a[j - 1] == a[j]:
            return None, 0
    return tuple(a), sign


class ExteriorForm:
    """Alternating k-form on K^n, ``{(i1 < ... < ik): coeff}``; zeros are dropped."""

    __slots__ = ("ambient_dim", "degree", "coeffs")

    def __init__(self, ambient_dim: int, degree: int, coeffs: Mapping | None = None):
        self.ambient_dim = ambient_dim
        self.degree = degree
        clean = {}
        for key, c in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != degree or any(not 0 <= i < ambient_dim for i in key):
                raise ValueError(f"bad index tuple {key} for a {degree}-form on K^{ambient_dim}")
            skey, sign = _sort_sign(key)
            if skey is None:
                continue
            v = clean.get(skey, ZERO) + sign * scalar(c)
            if v:
                clean[skey] = v
            else:
                clean.pop(skey, None)
        self.coeffs = dict(sorted(clean.items()))

    @classmethod
    def _raw(cls, n, k, coeffs):
        out = cls.__new__(cls)
        out.ambient_dim, out.degree = n, k
        out.coeffs = dict(sorted((key, v) for key, v in coeffs.items() if v))
        return out

    @classmethod
    def constant(cls, n: int, c) -> ExteriorForm:
        return cls(n, 0, {(): c})

    @classmethod
    def zero(cls, n: int, k: int) -> ExteriorForm:
        return cls._raw(n, k, {})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ExteriorForm):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return self.ambient_dim == other.ambient_dim
        return (self.ambient_dim, self.degree, self.coeffs) == (
            other.ambient_dim,
            other.degree,
            other.coeffs,
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.degree, tuple(self.coeffs.items())))

    def _compatible(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("forms live on different spaces")
        if self.degree != other.degree and self.coeffs and other.coeffs:
            raise ValueError("cannot add forms of different degree")

    def __add__(self, other: ExteriorForm) -> ExteriorForm:
        self._compatible(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        deg = self.degree if self.coeffs else other.degree
        return ExteriorForm._raw(self.ambient_dim, deg, out)

    def __neg__(self):
        return ExteriorForm._raw(self.ambient_dim, self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = scalar(c)
        return ExteriorForm._raw(self.ambient_dim, self.degree, {k: c * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def wedge(self, other: ExteriorForm) -> ExteriorForm:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("forms live on different spaces")
        out: dict = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                key, sign = _sort_sign(a + b)
                if key is None:
                    continue
                out[key] = out.get(key, ZERO) + sign * x * y
        return ExteriorForm._raw(self.ambient_dim, self.degree + other.degree, out)

    __xor__ = wedge

    def conjugate(self) -> ExteriorForm:
        return ExteriorForm._raw(self.ambient_dim, self.degree, {k: conj(v) for k, v in self.coeffs.items()})

    def vector(self) -> tuple:
        """Coordinates in the lexicographic basis of strictly increasing tuples."""
        return tuple(self.coeffs.get(key, ZERO) for key in combinations(range(self.ambient_dim), self.degree))

    @classmethod
    def from_vector(cls, n: int, k: int, v: Sequence) -> ExteriorForm:
        return cls._raw(n, k, dict(zip(combinations(range(n), k), v)))

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.coeffs:
            return "0"
        names = names or [f"e{i + 1}" for i in range(self.ambient_dim)]
        return format_combination((c, "^".join(names[i] for i in key) or "1") for key, c in self.coeffs.items())

    def __repr__(self):
        return f"ExteriorForm({self.format()})"


def covector(n: int, k: int) -> ExteriorForm:
    return ExteriorForm._raw(n, 1, {(k,): Fraction(1)})


def one_form(v: Sequence) -> ExteriorForm:
    """1-form with the given coordinates on the dual basis."""
    return ExteriorForm._raw(len(v), 1, {(k,): x for k, x in enumerate(v) if x})


@lru_cache(maxsize=64)
def _d_covectors(g: LieAlgebra) -> tuple:
    """Sparse ``d e^k`` as ``{(i, j): c}`` for each k."""
    out = [dict() for _ in range(g.dim)]
    for (i, j), terms in g.sparse.items():
        for k, c in terms:
            out[k][(i, j)] = c
    return tuple(out)


def d_basis(g: LieAlgebra, k: int) -> ExteriorForm:
    return ExteriorForm._raw(g.dim, 2, _d_covectors(g)[k])


def d(g: LieAlgebra, w: ExteriorForm) -> ExteriorForm:
    """Exterior differential of a form on g."""
    if w.ambient_dim != g.dim:
        raise ValueError("form does not live on g*")
    dcov = _d_covectors(g)
    out: dict = {}
    for mono, c in w.coeffs.items():
        for r, i in enumerate(mono):
            head, tail = mono[:r], mono[r + 1:]
            sgn = -1 if r % 2 else 1
            for (a, b), x in dcov[i].items():
                key, sign = _sort_sign(head + (a, b) + tail)
                if key is None:
                    continue
                out[key] = out.get(key, ZERO) + sgn * sign * x * c
    return ExteriorForm._raw(g.dim, w.degree + 1, out)


def _d_sparse_columns(g: LieAlgebra, k: int) -> list:
    """Columns of d_k (Lambda^k -> Lambda^{k+1}) as sparse dicts over (k+1)-tuple indices."""
    n = g.dim
    index = {key: r for r, key in enumerate(combinations(range(n), k + 1))}
    cols = []
    for mono in combinations(range(n), k):
        img = d(g, ExteriorForm._raw(n, k, {mono: Fraction(1)}))
        cols.append({index[key]: v for key, v in img.coeffs.items()})
    return cols


def d_matrix(g: LieAlgebra, k: int) -> Matrix:
    """Matrix of ``d_k`` with lexicographic tuple ordering on both sides."""
    n = g.dim
    rows = comb(n, k + 1) if 0 <= k + 1 <= n else 0
    cols = comb(n, k) if 0 <= k <= n else 0
    if k < 0 or k >= n:
        return Matrix.zeros(rows, cols)
    entries = [[ZERO] * cols for _ in range(rows)]
    for j, col in enumerate(_d_sparse_columns(g, k)):
        for i, v in col.items():
            entries[i][j] = v
    return Matrix.from_rows(entries, cols)


def _rank_d(g: LieAlgebra, k: int) -> int:
    if k < 0 or k >= g.dim:
        return 0
    return sparse_rank(_d_sparse_columns(g, k))


def betti(g: LieAlgebra, k: int) -> int:
    """``dim ker d_k - rank d_{k-1}``, computed exactly."""
    n = g.dim
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} outside 0..{n}")
    return comb(n, k) - _rank_d(g, k) - _rank_d(g, k - 1)


def betti_numbers(g: LieAlgebra) -> tuple:
    ranks = [_rank_d(g, k) for k in range(g.dim + 1)]
    return tuple(comb(g.dim, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(g.dim + 1))


def cocycle_space(g: LieAlgebra, k: int) -> Subspace:
    return kernel(d_matrix(g, k))


def coboundary_space(g: LieAlgebra, k: int) -> Subspace:
    if k == 0:
        return Subspace.zero(1)
    return Subspace.from_sparse(_d_sparse_columns(g, k - 1), comb(g.dim, k))


def annihilator(g_or_dim, a: Subspace) -> Subspace:
    """``{f : f(X) = 0 for all X in a}`` in the dual coordinates."""
    n = g_or_dim.dim if isinstance(g_or_dim, LieAlgebra) else g_or_dim
    if a.ambient_dim != n:
        raise ValueError("subspace does not live in g")
    if not a.dim:
        return Subspace.full(n)
    return kernel(Matrix.from_rows(a.basis, n))


def vectors_killed_by(forms: Subspace) -> Subspace:
    """Common kernel of a space of covectors (the inverse annihilator)."""
    return annihilator(forms.ambient_dim, forms)


def v_filtration(g: LieAlgebra) -> list:
    """``[V_0, V_1, ..., V_s]`` with ``V_l = {f : d f in Lambda^2(V_{l-1})}``.

    A 2-form lies in ``Lambda^2(W)`` exactly when contracting it with any
    vector annihilated by ``W`` gives zero, so ``V_l`` is cut out by
    ``f([X, Y]) = 0`` for ``X`` in the common kernel of ``V_{l-1}``.
    """
    n = g.dim
    full = Subspace.full(n)
    filt = [Subspace.zero(n)]
    while filt[-1] != full:
        killed = vectors_killed_by(filt[-1])
        rows = []
        for x in killed.basis:
            xd = _nz(x)
            for j in range(n):
                r = _sparse_bracket(g, xd, {j: Fraction(1)})
                if r:
                    rows.append(r)
        nxt = annihilator(n, Subspace.from_sparse(rows, n))
        if nxt == filt[-1]:
            raise NotNilpotentError(f"{g.name}: V-filtration stalls at dimension {nxt.dim} < {n}")
        filt.append(nxt)
    if len(filt) == 1:
        filt.append(full)
    return filt


def check_v_annihilator_identity(g: LieAlgebra) -> bool:
    """``V_l`` equals the annihilator of ``g^{l+1}`` for every l."""
    filt = v_filtration(g)
    lcs = lower_central_series(g)
    for l, v in enumerate(filt):
        # lcs[l] is g^{l+1}
        target = lcs[l] if l < len(lcs) else Subspace.zero(g.dim)
        if v != annihilator(g, target):
            return False
    return True


# ---------------------------------------------------------------------------
# 2-forms as antisymmetric matrices and membership in wedge subspaces
# ---------------------------------------------------------------------------


def two_form_matrix(w: ExteriorForm) -> list:
    """Antisymmetric ``M`` with ``w = sum_{i<j} M[i][j] e^i ^ e^j``."""
    if w.degree != 2 and w.coeffs:
        raise ValueError("expected a 2-form")
    n = w.ambient_dim
    m = [[ZERO] * n for _ in range(n)]
    for (i, j), c in w.coeffs.items():
        m[i][j] = c
        m[j][i] = -c
    return m


def two_form_from_matrix(m: Sequence[Sequence]) -> ExteriorForm:
    n = len(m)
    return ExteriorForm._raw(n, 2, {(i, j): m[i][j] for i in range(n) for j in range(i + 1, n)})


def wedge_span(a: Subspace, b: Subspace) -> Subspace:
    """``a ^ b`` inside Lambda^2 coordinates, spanned by all basis wedges."""
    n = a.ambient_dim
    vecs = [one_form(x).wedge(one_form(y)).vector() for x in a.basis for y in b.basis]
    return Subspace.span(vecs, comb(n, 2))


def _adapted_basis(a: Subspace, b: Subspace) -> tuple:
    """Rows: basis of a, then completion to b, then standard completion to K^n."""
    n = a.ambient_dim
    rows = list(a.basis)
    cur = Subspace.span(rows, n) if rows else Subspace.zero(n)
    for y in b.basis:
        if cur.reduce(y):
            rows.append(y)
            cur = Subspace.span(rows, n)
    nb = len(rows)
    for k in range(n):
        e = unit(n, k)
        if cur.reduce(e):
            rows.append(e)
            cur = Subspace.span(rows, n)
    return rows, a.dim, nb


def change_of_coframe(w: ExteriorForm, rows: Sequence[Sequence]) -> list:
    """Coefficient matrix of the 2-form ``w`` in the coframe ``theta_a = rows[a]``.

    If ``P`` has the coframe as rows then ``e = P^{-1} theta`` and the
    antisymmetric coefficient matrix transforms as ``Q^T M Q`` with ``Q = P^{-1}``.
    """
    from .exactlin import inverse

    n = w.ambient_dim
    q = inverse(Matrix.from_rows(rows, n)).to_rows()
    out = [[ZERO] * n for _ in range(n)]
    for (i, j), c in w.coeffs.items():
        qi, qj = q[i], q[j]
        nzi = [(a, x) for a, x in enumerate(qi) if x]
        nzj = [(b, y) for b, y in enumerate(qj) if y]
        for a, x in nzi:
            cx = c * x
            for b, y in nzj:
                v = cx * y
                out[a][b] += v
                out[b][a] -= v
    return out


def wedge_contains(a: Subspace, b: Subspace, w: ExteriorForm) -> bool:
    """Is the 2-form ``w`` in ``a ^ b``?  Requires ``a`` inside ``b``.

    In a coframe adapted to ``a <= b <= K^n`` the span of ``a ^ b`` is
    exactly the coordinates ``(p, q)`` with ``p`` in the ``a``-block and
    ``q`` in the ``b``-block, so membership is a support condition.
    """
    if any(b.reduce(x) for x in a.basis):
        raise ValueError("wedge_contains needs a contained in b")
    if not w.coeffs:
        return True
    rows, na, nb = _adapted_basis(a, b)
    m = change_of_coframe(w, rows)
    n = len(rows)
    for p in range(n):
        for q in range(p + 1, n):
            if m[p][q] and not (p < na and q < nb):
                return False
    return True
