"""Almost complex structures on Lie algebras and their integrability theory.

Orientation conventions (fixed so the classical examples come out literally):

* ``plus_i = {X - iJX}`` is the +i eigenspace of J on g^C and
  ``minus_i`` its conjugate.
* J acts on covectors by ``(Jf)(X) = f(JX)``.  Holomorphic 1-forms are
  ``lambda10 = {f + iJf}``; they annihilate ``plus_i``.  For the g_{6,8}
  structure with ``J e1 = -e2`` this gives ``e^1 + i e^2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .cecohom import (
    ExteriorForm,
    change_of_coframe,
    d,
    one_form,
    v_filtration,
    wedge_contains,
)
from .exactlin import (
    I,
    ZERO,
    Matrix,
    Subspace,
    conj,
    format_combination,
    format_scalar,
    is_real,
    kernel,
    real_part,
    subspace_intersect,
    subspace_sum,
)
from .liecore import LieAlgebra, _nz, _sparse_bracket, bracket, lower_central_series, nil_index, unit

__all__ = [
    "AlmostComplexStructure",
    "InvalidStructure",
    "NotIntegrableError",
    "ComplexSplitting",
    "JInvariantSeries",
    "ClassificationReport",
    "Coframe",
    "CoframeExpansion",
    "nijenhuis",
    "is_integrable",
    "integrable_by_subalgebra",
    "integrable_by_forms",
    "is_abelian_structure",
    "is_complex_lie_structure",
    "splitting",
    "pq_decompose",
    "j_series",
    "v10_filtration",
    "v10_by_annihilators",
    "check_dj_lemma",
    "is_nilpotent_structure",
    "canonical_flag",
    "check_salamon_condition",
    "check_abelian_flag_condition",
    "express_d_in_coframe",
    "check_lcommut",
    "check_nontrivial",
    "check_tilde_subalgebra",
    "classify",
]


class InvalidStructure(ValueError):
    def __init__(self, message: str, column: int | None = None):
        super().__init__(message)
        self.column = column


class NotIntegrableError(ValueError):
    pass


class AlmostComplexStructure:
    """Rational endomorphism J with J^2 = -1; column j is ``J e_j``."""

    __slots__ = ("matrix", "cols", "_dual")

    def __init__(self, matrix: Matrix):
        n = matrix.rows
        if matrix.cols != n:
            raise InvalidStructure("J must be square")
        if n % 2:
            raise InvalidStructure(f"odd dimension {n} admits no almost complex structure")
        if not all(is_real(x) for x in matrix.entries):
            raise InvalidStructure("J must have rational entries")
        self.matrix = matrix
        self.cols = tuple({i: matrix[i, j] for i in range(n) if matrix[i, j]} for j in range(n))
        bad = self.square_defect()
        if bad is not None:
            raise InvalidStructure(f"J^2 != -1: column {bad + 1} of J^2 + 1 is nonzero", bad)
        self._dual = None

    @classmethod
    def from_images(cls, g: LieAlgebra, images: Mapping) -> AlmostComplexStructure:
        """``{name: {name: coeff}}`` giving ``J e_name``; every basis vector must appear."""
        n = g.dim
        rows = [[ZERO] * n for _ in range(n)]
        missing = [s for s in g.basis_names if s not in images]
        if missing:
            raise InvalidStructure(f"J not specified on {', '.join(missing)}")
        for src, terms in images.items():
            j = g.index(src)
            for dst, c in terms.items():
                rows[g.index(dst)][j] += Fraction(c)
        return cls(Matrix.from_rows(rows, n))

    @classmethod
    def from_pairs(cls, g: LieAlgebra, pairs: Sequence) -> AlmostComplexStructure:
        """``[(a, b), ...]`` meaning ``J a = b`` and ``J b = -a``."""
        images = {}
        for a, b in pairs:
            images[a] = {b: 1}
            images[b] = {a: -1}
        return cls.from_images(g, images)

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def square_defect(self):
        n = self.dim
        for j in range(n):
            img = self.apply_sparse(self.cols[j])
            img[j] = img.get(j, ZERO) + 1
            if any(img.values()):
                return j
        return None

    def apply_sparse(self, v: Mapping) -> dict:
        out: dict = {}
        for j, a in v.items():
            for i, c in self.cols[j].items():
                nv = out.get(i, ZERO) + a * c
                if nv:
                    out[i] = nv
                else:
                    out.pop(i, None)
        return out

    def apply(self, v: Sequence) -> tuple:
        out = self.apply_sparse(_nz(v))
        return tuple(out.get(i, ZERO) for i in range(self.dim))

    def dual_apply(self, f: Sequence) -> tuple:
        """``f o J`` in dual coordinates."""
        n = self.dim
        return tuple(sum((f[i] * c for i, c in self.cols[k].items()), ZERO) for k in range(n))

    def image(self, sub: Subspace) -> Subspace:
        return Subspace.span((self.apply(b) for b in sub.basis), self.dim)

    def dual_image(self, sub: Subspace) -> Subspace:
        return Subspace.span((self.dual_apply(b) for b in sub.basis), self.dim)

    def signed_matching(self):
        """``(pairs, signs)`` if J is a signed matching in this basis, else None."""
        pairs, signs = [], []
        for j, col in enumerate(self.cols):
            if len(col) != 1:
                return None
            (i, c), = col.items()
            if c not in (1, -1):
                return None
            if j < i:
                pairs.append((j, i))
                signs.append(int(c))
        return tuple(pairs), tuple(signs)

    def __eq__(self, other):
        if not isinstance(other, AlmostComplexStructure):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"AlmostComplexStructure(dim={self.dim})"


def _check_dims(g: LieAlgebra, J: AlmostComplexStructure):
    if g.dim != J.dim:
        raise InvalidStructure(f"J is {J.dim}-dimensional but the algebra has dimension {g.dim}")


def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, ZERO) - v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _nijenhuis_sparse(g, J, x: dict, y: dict) -> dict:
    jx, jy = J.apply_sparse(x), J.apply_sparse(y)
    r = _sub(_sparse_bracket(g, jx, jy), _sparse_bracket(g, x, y))
    r = _sub(r, J.apply_sparse(_sparse_bracket(g, jx, y)))
    return _sub(r, J.apply_sparse(_sparse_bracket(g, x, jy)))


def nijenhuis(g: LieAlgebra, J: AlmostComplexStructure, x: Sequence, y: Sequence) -> tuple:
    """``[Jx, Jy] - [x, y] - J[Jx, y] - J[x, Jy]``."""
    _check_dims(g, J)
    r = _nijenhuis_sparse(g, J, _nz(x), _nz(y))
    return tuple(r.get(i, ZERO) for i in range(g.dim))


def _first_failure(g, J, residual) -> tuple | None:
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            if residual({i: Fraction(1)}, {j: Fraction(1)}):
                return (g.basis_names[i], g.basis_names[j])
    return None


def is_integrable(g: LieAlgebra, J: AlmostComplexStructure, cross_check: bool = True):
    """``(True, None)`` or ``(False, (name_i, name_j))`` for the first failing basis pair."""
    _check_dims(g, J)
    w = _first_failure(g, J, lambda x, y: _nijenhuis_sparse(g, J, x, y))
    ok = w is None
    if ok and cross_check and not integrable_by_subalgebra(g, J):
        raise AssertionError("Nijenhuis tensor vanishes but the +i eigenspace is not a subalgebra")
    return ok, w


def is_abelian_structure(g: LieAlgebra, J: AlmostComplexStructure):
    """``[JX, JY] = [X, Y]`` on basis pairs."""
    _check_dims(g, J)

    def res(x, y):
        return _sub(_sparse_bracket(g, J.apply_sparse(x), J.apply_sparse(y)), _sparse_bracket(g, x, y))

    w = _first_failure(g, J, res)
    return w is None, w


def is_complex_lie_structure(g: LieAlgebra, J: AlmostComplexStructure):
    """``[JX, Y] = J[X, Y]`` on all ordered basis pairs."""
    _check_dims(g, J)
    n = g.dim
    for i in range(n):
        x = {i: Fraction(1)}
        jx = J.apply_sparse(x)
        for j in range(n):
            y = {j: Fraction(1)}
            if _sub(_sparse_bracket(g, jx, y), J.apply_sparse(_sparse_bracket(g, x, y))):
                return False, (g.basis_names[i], g.basis_names[j])
    return True, None


# ---------------------------------------------------------------------------
# complexified splitting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexSplitting:
    plus_i: Subspace
    minus_i: Subspace
    lambda10: Subspace
    lambda01: Subspace


def splitting(g: LieAlgebra, J: AlmostComplexStructure) -> ComplexSplitting:
    _check_dims(g, J)
    n = g.dim
    shifted = Matrix(n, n, [J.matrix[r, c] - (I if r == c else 0) for r in range(n) for c in range(n)])
    plus = kernel(shifted)
    minus = plus.conjugate()
    lam10 = kernel(Matrix.from_rows(plus.basis, n))
    explicit = Subspace.span(
        [tuple(a + I * b for a, b in zip(unit(n, k), J.dual_apply(unit(n, k)))) for k in range(n)], n
    )
    if lam10 != explicit:
        raise AssertionError("annihilator of the +i eigenspace differs from {f + iJf}")
    return ComplexSplitting(plus, minus, lam10, lam10.conjugate())


def _substitute(w: ExteriorForm, rows: Sequence[Sequence]) -> ExteriorForm:
    """Replace each ``e^i`` by the 1-form with coordinates ``rows[i]``."""
    n = len(rows[0]) if rows else w.ambient_dim
    images = [one_form(r) for r in rows]
    out = ExteriorForm.zero(n, w.degree)
    for mono, c in w.coeffs.items():
        term = ExteriorForm.constant(n, c)
        for i in mono:
            term = term.wedge(images[i])
        out = out + term
    if not out.coeffs:
        out = ExteriorForm.zero(n, w.degree)
    return out


def pq_decompose(w: ExteriorForm, s: ComplexSplitting) -> dict:
    """Split ``w`` into its (p, q) components relative to the splitting."""
    from .exactlin import inverse

    n = w.ambient_dim
    m = s.lambda10.dim
    frame = list(s.lambda10.basis) + list(s.lambda01.basis)
    p = Matrix.from_rows(frame, n)
    q = inverse(p).to_rows()
    in_frame = _substitute(w, q)
    parts: dict = {}
    for mono, c in in_frame.coeffs.items():
        pdeg = sum(1 for a in mono if a < m)
        key = (pdeg, w.degree - pdeg)
        parts.setdefault(key, {})[mono] = c
    out = {}
    for key, coeffs in sorted(parts.items()):
        out[key] = _substitute(ExteriorForm._raw(n, w.degree, coeffs), frame)
    return out


# ---------------------------------------------------------------------------
# J-invariant descending series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JInvariantSeries:
    """``g^l(J) = g^l + J g^l`` for ``l = 1..s`` and the number of equalities E."""

    spaces: tuple
    equality_count: int

    @property
    def dims(self) -> tuple:
        return tuple(v.dim for v in self.spaces)

    def term(self, l: int) -> Subspace:
        """``g^l(J)``, 1-based; zero past the end."""
        if l - 1 < len(self.spaces):
            return self.spaces[l - 1]
        return Subspace.zero(self.spaces[0].ambient_dim)


def j_series(g: LieAlgebra, J: AlmostComplexStructure) -> JInvariantSeries:
    _check_dims(g, J)
    lcs = lower_central_series(g)
    s = nil_index(g)
    spaces = tuple(subspace_sum(lcs[l], J.image(lcs[l])) for l in range(s))
    e = sum(1 for l in range(s - 1) if spaces[l] == spaces[l + 1])
    return JInvariantSeries(spaces, e)


# ---------------------------------------------------------------------------
# holomorphic filtration and structural lemmas
# ---------------------------------------------------------------------------


def v10_filtration(g: LieAlgebra, J: AlmostComplexStructure, verify: bool = True) -> list:
    """``V_l^{1,0} = V_l^C intersect lambda10`` for ``l = 0..s``.

    With ``verify`` the result is compared against the annihilators of
    ``g^{l+1}(J)^C + plus_i``, computed independently.
    """
    lam10 = splitting(g, J).lambda10
    out = [subspace_intersect(v, lam10) for v in v_filtration(g)]
    if verify and out != v10_by_annihilators(g, J):
        raise AssertionError("V_l^{1,0} differs from the annihilator of g^{l+1}(J)^C + plus_i")
    return out


def v10_by_annihilators(g: LieAlgebra, J: AlmostComplexStructure) -> list:
    split = splitting(g, J)
    js = j_series(g, J)
    s = len(js.spaces)
    out = []
    for l in range(s + 1):
        tgt = subspace_sum(js.term(l + 1), split.plus_i)
        out.append(kernel(Matrix.from_rows(tgt.basis, g.dim)))
    return out


def _dform(g, v) -> ExteriorForm:
    return d(g, one_form(v))


def check_dj_lemma(g: LieAlgebra, J: AlmostComplexStructure):
    """``d V_l^{1,0}`` inside ``V_{l-1}^{1,0} ^ V_{l-1}^C`` for all l; returns ``(ok, failing level)``."""
    v = v_filtration(g)
    v10 = v10_filtration(g, J)
    for l in range(1, len(v10)):
        a, b = v10[l - 1], v[l - 1]
        for w in v10[l].basis:
            if not wedge_contains(a, b, _dform(g, w)):
                return False, l
    return True, None


def is_nilpotent_structure(g: LieAlgebra, J: AlmostComplexStructure):
    """Integrable J with ``d V_l^{1,0}`` inside ``V_{l-1}^{1,0} ^ (V_{l-1}^{1,0} + V_{l-1}^{0,1})``."""
    ok, w = is_integrable(g, J)
    if not ok:
        return False, {"not_integrable": w}
    v10 = v10_filtration(g, J)
    for l in range(1, len(v10)):
        a = v10[l - 1]
        b = subspace_sum(a, a.conjugate())
        for w in v10[l].basis:
            if not wedge_contains(a, b, _dform(g, w)):
                return False, {"level": l}
    return True, None


@dataclass(frozen=True)
class Coframe:
    """Holomorphic coframe ``omega^1..omega^m`` adapted to the V^{1,0} filtration."""

    forms: tuple
    levels: tuple
    names: tuple = ()

    def __len__(self):
        return len(self.forms)

    def theta(self) -> list:
        return list(self.forms) + [tuple(conj(x) for x in f) for f in self.forms]


def _lead(v) -> Fraction:
    for x in v:
        if x:
            return real_part(x)
    return ZERO


def canonical_flag(g: LieAlgebra, J: AlmostComplexStructure) -> Coframe:
    """Coframe of lambda10 built level by level along ``V_l^{1,0}``.

    New directions are taken in RREF pivot order of the real space
    ``V_l intersect J V_l``; each real covector ``r`` is replaced by ``-Jr``
    when ``Jr`` has a negative leading coefficient, then ``omega = f + iJf``.
    """
    ok, w = is_integrable(g, J)
    if not ok:
        raise NotIntegrableError(f"J is not integrable (Nijenhuis tensor nonzero on {w})")
    n = g.dim
    forms, levels = [], []
    taken = Subspace.zero(n)
    for l, v in enumerate(v_filtration(g)):
        if l == 0:
            continue
        real = subspace_intersect(v, J.dual_image(v))
        for r in real.basis:
            if not taken.reduce(r):
                continue
            jr = J.dual_apply(r)
            f = r if _lead(jr) > 0 else tuple(-x for x in jr)
            jf = J.dual_apply(f)
            forms.append(tuple(a + I * b for a, b in zip(f, jf)))
            levels.append(l)
            taken = subspace_sum(taken, Subspace.span([f, jf], n))
    return Coframe(tuple(forms), tuple(levels), g.basis_names)


def check_salamon_condition(g: LieAlgebra, flag: Coframe):
    """``d omega^{l+1}`` lies in the ideal generated by ``omega^1..omega^l`` (degree 2)."""
    n = g.dim
    full = Subspace.full(n)
    for l, w in enumerate(flag.forms):
        a = Subspace.span(flag.forms[:l], n) if l else Subspace.zero(n)
        if not wedge_contains(a, full, _dform(g, w)):
            return False, l + 1
    return True, None


def check_abelian_flag_condition(g: LieAlgebra, flag: Coframe):
    """``d omega^{l+1}`` in ``Lambda^{1,1}(omega^1..omega^l, conj)`` for every l."""
    m = len(flag.forms)
    for l in range(m):
        exp = express_d_in_coframe(g, flag, l + 1)
        for (a, b), c in exp.coeffs.items():
            if not (a < m <= b and a < l and b - m < l):
                return False, l + 1
    return True, None


@dataclass(frozen=True)
class CoframeExpansion:
    """``d omega^k`` in the basis ``theta_a ^ theta_b`` (a < b) where
    ``theta = (omega^1..omega^m, conj omega^1..conj omega^m)``."""

    k: int
    m: int
    coeffs: dict
    form: ExteriorForm

    def label(self, a: int) -> str:
        return f"w{a + 1}" if a < self.m else f"wb{a - self.m + 1}"

    def coefficient(self, left: str, right: str):
        idx = {self.label(a): a for a in range(2 * self.m)}
        a, b = idx[left], idx[right]
        if a < b:
            return self.coeffs.get((a, b), ZERO)
        return -self.coeffs.get((b, a), ZERO)

    def terms(self) -> list:
        return [(c, self.label(a), self.label(b)) for (a, b), c in self.coeffs.items()]

    def format(self) -> str:
        if not self.coeffs:
            return f"d w{self.k} = 0"
        return f"d w{self.k} = " + format_combination((c, f"{l}^{r}") for c, l, r in self.terms())


def express_d_in_coframe(g: LieAlgebra, coframe, k: int) -> CoframeExpansion:
    """Expand ``d omega^k`` (1-based) over ``{w^w, w^wb, wb^wb}``; the residual is checked to vanish."""
    forms = coframe.forms if isinstance(coframe, Coframe) else tuple(coframe)
    m = len(forms)
    theta = list(forms) + [tuple(conj(x) for x in f) for f in forms]
    if len(theta) != g.dim:
        raise ValueError("coframe and its conjugate must form a basis of (g*)^C")
    dw = _dform(g, forms[k - 1])
    mat = change_of_coframe(dw, theta)
    coeffs = {(a, b): mat[a][b] for a in range(2 * m) for b in range(a + 1, 2 * m) if mat[a][b]}
    recon = ExteriorForm.zero(g.dim, 2)
    for (a, b), c in coeffs.items():
        recon = recon + c * one_form(theta[a]).wedge(one_form(theta[b]))
    if recon != dw:
        raise AssertionError("coframe expansion does not reproduce d omega")
    return CoframeExpansion(k, m, coeffs, dw)


def check_lcommut(g: LieAlgebra, J: AlmostComplexStructure):
    """``[g^l(J), g^l(J)]`` inside ``g^{l+1}(J)`` for every l; returns ``(ok, failing l)``."""
    js = j_series(g, J)
    for l in range(1, len(js.spaces) + 1):
        cur, nxt = js.term(l), js.term(l + 1)
        basis = cur.basis
        for a in range(len(basis)):
            for b in range(a + 1, len(basis)):
                if nxt.reduce(bracket(g, basis[a], basis[b])):
                    return False, l
    return True, None


def check_nontrivial(g: LieAlgebra, J: AlmostComplexStructure) -> bool:
    """``[g, g] + J[g, g]`` is a proper subspace of g."""
    return j_series(g, J).term(2).dim < g.dim


def check_tilde_subalgebra(g: LieAlgebra, J: AlmostComplexStructure):
    """``[g~^l, g~^l]`` inside ``g~^{l+1}`` where ``g~^l = (g^l)^C + plus_i``."""
    split = splitting(g, J)
    lcs = lower_central_series(g)
    tilde = [subspace_sum(x, split.plus_i) for x in lcs]
    tilde.append(split.plus_i)
    for l in range(len(tilde) - 1):
        b = tilde[l].basis
        for x in range(len(b)):
            for y in range(x + 1, len(b)):
                if tilde[l + 1].reduce(bracket(g, b[x], b[y])):
                    return False, l + 1
    return True, None


def integrable_by_subalgebra(g: LieAlgebra, J: AlmostComplexStructure) -> bool:
    """The +i eigenspace is closed under the bracket."""
    plus = splitting(g, J).plus_i
    b = plus.basis
    return all(not plus.reduce(bracket(g, b[x], b[y])) for x in range(len(b)) for y in range(x + 1, len(b)))


def integrable_by_forms(g: LieAlgebra, J: AlmostComplexStructure) -> bool:
    """``d lambda10`` inside ``lambda10 ^ (g*)^C``."""
    lam = splitting(g, J).lambda10
    full = Subspace.full(g.dim)
    return all(wedge_contains(lam, full, _dform(g, w)) for w in lam.basis)


@dataclass
class ClassificationReport:
    integrable: bool
    abelian: bool
    complex_lie: bool
    nilpotent_structure: bool
    witnesses: dict = field(default_factory=dict)

    def implications_hold(self) -> bool:
        return (
            (not self.abelian or self.integrable)
            and (not self.complex_lie or self.integrable)
            and (not (self.abelian or self.complex_lie) or self.nilpotent_structure)
        )

    def as_dict(self) -> dict:
        return {
            "integrable": self.integrable,
            "abelian": self.abelian,
            "complex_lie": self.complex_lie,
            "nilpotent_structure": self.nilpotent_structure,
            "witnesses": {k: _jsonable(v) for k, v in sorted(self.witnesses.items())},
        }


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    return format_scalar(v)


def classify(g: LieAlgebra, J: AlmostComplexStructure) -> ClassificationReport:
    integ, wi = is_integrable(g, J)
    ab, wa = is_abelian_structure(g, J)
    cl, wc = is_complex_lie_structure(g, J)
    witnesses = {}
    if not integ:
        witnesses["integrable"] = wi
    if not ab:
        witnesses["abelian"] = wa
    if not cl:
        witnesses["complex_lie"] = wc
    nil = False
    if integ:
        nil, wn = is_nilpotent_structure(g, J)
        if not nil:
            witnesses["nilpotent_structure"] = wn
    else:
        witnesses["nilpotent_structure"] = {"not_integrable": wi}
    return ClassificationReport(integ, ab, cl, nil, witnesses)
