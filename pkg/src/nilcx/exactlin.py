"""Exact arithmetic over Q and Q(i), dense matrices and subspaces.

Rationals are plain :class:`fractions.Fraction` values.  Gaussian rationals
are :class:`GaussianRational`; every arithmetic result whose imaginary part
vanishes collapses back to a ``Fraction``, so real data stays on the fast
path even inside complexified computations.

Subspaces are stored in reduced row-echelon form, which makes set equality
an entry-wise comparison of bases.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "GaussianRational",
    "I",
    "Scalar",
    "scalar",
    "conj",
    "real_part",
    "imag_part",
    "is_real",
    "format_scalar",
    "format_combination",
    "Matrix",
    "rref",
    "rank",
    "kernel",
    "inverse",
    "solve",
    "Subspace",
    "subspace_sum",
    "subspace_intersect",
    "contains",
    "DimensionMismatch",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatch(ValueError):
    pass


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return _mk(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return _mk(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return _mk(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return _mk(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return _mk(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return _mk(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return _mk(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            c, d = other.re, other.im
            den = c * c + d * d
            if not den:
                raise ZeroDivisionError("division by zero in Q(i)")
            a, b = self.re, self.im
            return _mk((a * c + b * d) / den, (b * c - a * d) / den)
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero in Q(i)")
            return _mk(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other) / self
        return NotImplemented

    def conjugate(self):
        return GaussianRational(self.re, -self.im)


def _mk(re, im):
    if not im:
        return re if type(re) is Fraction else Fraction(re)
    return GaussianRational(re, im)


I = GaussianRational(0, 1)

Scalar = Union[Fraction, GaussianRational]


def scalar(x) -> Scalar:
    """Coerce ``x`` (int, Fraction, str, GaussianRational) to a canonical scalar."""
    if isinstance(x, GaussianRational):
        return _mk(x.re, x.im)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def conj(x):
    if isinstance(x, GaussianRational):
        return GaussianRational(x.re, -x.im)
    return x


def real_part(x) -> Fraction:
    return x.re if isinstance(x, GaussianRational) else Fraction(x)


def imag_part(x) -> Fraction:
    return x.im if isinstance(x, GaussianRational) else ZERO


def is_real(x) -> bool:
    return not isinstance(x, GaussianRational) or x.im == 0


def format_scalar(x) -> str:
    """``1/2``, ``-3``, ``2i``, ``-i``, ``i/2``, ``1/2-3i/4``."""
    re, im = real_part(x), imag_part(x)
    if not im:
        return str(re)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        num = "-" if im.numerator == -1 else ("" if im.numerator == 1 else str(im.numerator))
        ims = f"{num}i" if im.denominator == 1 else f"{num}i/{im.denominator}"
    if not re:
        return ims
    sign = "" if ims.startswith("-") else "+"
    return f"{re}{sign}{ims}"


def format_combination(terms) -> str:
    """``x - 1/2 y + (i/2) z`` from ``(coeff, label)`` pairs; zero terms are dropped."""
    parts = []
    for c, label in terms:
        if not c:
            continue
        re, im = real_part(c), imag_part(c)
        neg = re < 0 if not im else (not re and im < 0)
        mag = -c if neg else c
        if mag == 1:
            body = label
        elif is_real(mag) or not re:
            body = f"{format_scalar(mag)} {label}"
        else:
            body = f"({format_scalar(mag)}) {label}"
        if parts:
            parts.append(f"- {body}" if neg else f"+ {body}")
        else:
            parts.append(f"-{body}" if neg else body)
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# sparse echelon core; rows are dicts {column: nonzero scalar}
# ---------------------------------------------------------------------------


def _echelon(rows: Iterable[dict]) -> dict:
    """Incremental fully-reduced echelon form.

    Returns ``{pivot_column: row}``; every row has a 1 at its pivot and zeros
    at every other pivot column.
    """
    pivots: dict = {}
    for src in rows:
        r = {c: scalar(v) for c, v in src.items() if v}
        hits = [(c, r[c]) for c in r if c in pivots]
        for c, f in hits:
            for k, v in pivots[c].items():
                nv = r.get(k, ZERO) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if not r:
            continue
        p = min(r)
        inv = r[p]
        if inv != 1:
            r = {k: v / inv for k, v in r.items()}
        for prow in pivots.values():
            f = prow.get(p)
            if f:
                for k, v in r.items():
                    nv = prow.get(k, ZERO) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        del prow[k]
        pivots[p] = r
    return pivots


def _sparse_rows(rows: Iterable[Sequence]) -> list:
    return [{j: v for j, v in enumerate(row) if v} for row in rows]


def _dense(row: dict, n: int) -> tuple:
    return tuple(row.get(j, ZERO) for j in range(n))


def sparse_rank(rows: Iterable[dict]) -> int:
    """Rank of a matrix given as sparse row dicts."""
    return len(_echelon(rows))


class Matrix:
    """Immutable dense matrix with exact entries, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(scalar(e) for e in entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        rows = [tuple(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, [ZERO] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> Matrix:
        return Matrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def conjugate(self) -> Matrix:
        return Matrix(self.rows, self.cols, [conj(e) for e in self.entries])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(e) for e in r) for r in self.to_rows())
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def __add__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in subtraction")
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> Matrix:
        return Matrix(self.rows, self.cols, [c * e for e in self.entries])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            ocols = [other.column(j) for j in range(other.cols)]
            out = []
            for i in range(self.rows):
                r = self.row(i)
                nz = [(k, a) for k, a in enumerate(r) if a]
                for col in ocols:
                    s = ZERO
                    for k, a in nz:
                        b = col[k]
                        if b:
                            s = s + a * b
                    out.append(s)
            return Matrix(self.rows, other.cols, out)
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        nz = [(k, a) for k, a in enumerate(v) if a]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            s = ZERO
            for k, a in nz:
                b = r[k]
                if b:
                    s = s + a * b
            out.append(s)
        return tuple(out)


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form; zero rows are kept at the bottom."""
    piv = _echelon(_sparse_rows(m.to_rows()))
    rows = [_dense(piv[p], m.cols) for p in sorted(piv)]
    rows += [(ZERO,) * m.cols] * (m.rows - len(rows))
    return Matrix.from_rows(rows, m.cols) if rows else Matrix(0, m.cols, [])


def rank(m: Matrix) -> int:
    return sparse_rank(_sparse_rows(m.to_rows()))


def kernel(m: Matrix) -> Subspace:
    """Right null space ``{x : m x = 0}``."""
    n = m.cols
    piv = _echelon(_sparse_rows(m.to_rows()))
    free = [j for j in range(n) if j not in piv]
    vecs = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for p, row in piv.items():
            c = row.get(f)
            if c:
                v[p] = -c
        vecs.append(v)
    return Subspace.span(vecs, n)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = m.rows
    rows = []
    for i in range(n):
        r = {j: v for j, v in enumerate(m.row(i)) if v}
        r[n + i] = ONE
        rows.append(r)
    piv = _echelon(rows)
    if any(p >= n for p in piv) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix.from_rows([tuple(piv[i].get(n + j, ZERO) for j in range(n)) for i in range(n)], n)


def solve(m: Matrix, b: Sequence):
    """One solution of ``m x = b`` or ``None`` if inconsistent."""
    n = m.cols
    rows = []
    for i in range(m.rows):
        r = {j: v for j, v in enumerate(m.row(i)) if v}
        if b[i]:
            r[n] = scalar(b[i])
        rows.append(r)
    piv = _echelon(rows)
    if n in piv:
        return None
    x = [ZERO] * n
    for p, row in piv.items():
        x[p] = row.get(n, ZERO)
    return tuple(x)


class Subspace:
    """Linear subspace of K^n stored by its RREF basis (zero rows dropped)."""

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim: int, basis: Sequence[Sequence] = ()):
        piv = _echelon(_sparse_rows(basis))
        self.ambient_dim = ambient_dim
        self.basis = tuple(_dense(piv[p], ambient_dim) for p in sorted(piv))
        self._pivots = piv

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in K^{ambient_dim}")
        return cls(ambient_dim, vectors)

    @classmethod
    def from_sparse(cls, rows: Iterable[dict], ambient_dim: int) -> Subspace:
        out = cls.__new__(cls)
        piv = _echelon(rows)
        out.ambient_dim = ambient_dim
        out.basis = tuple(_dense(piv[p], ambient_dim) for p in sorted(piv))
        out._pivots = piv
        return out

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, Matrix.identity(n).to_rows())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple:
        return tuple(sorted(self._pivots))

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce(self, v: Sequence) -> dict:
        """Remainder of ``v`` modulo this subspace, as a sparse dict."""
        r = {j: x for j, x in enumerate(v) if x} if not isinstance(v, dict) else dict(v)
        for c in [c for c in r if c in self._pivots]:
            f = r.get(c)
            if not f:
                continue
            for k, x in self._pivots[c].items():
                nv = r.get(k, ZERO) - f * x
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return r

    def __contains__(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        return not self.reduce(v)

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` in the stored basis; raises if ``v`` is outside."""
        if self.reduce(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in sorted(self._pivots))

    def conjugate(self) -> Subspace:
        return Subspace.from_sparse(
            ({k: conj(x) for k, x in row.items()} for row in self._pivots.values()),
            self.ambient_dim,
        )

    def image(self, m: Matrix) -> Subspace:
        return Subspace.span((m.apply(b) for b in self.basis), m.rows)

    def is_real(self) -> bool:
        return all(is_real(x) for b in self.basis for x in b)


def _check(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    return Subspace.from_sparse(
        [dict(r) for r in a._pivots.values()] + [dict(r) for r in b._pivots.values()],
        a.ambient_dim,
    )


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: echelonize ``[a | a]`` over ``[b | 0]`` and read off the right half."""
    _check(a, b)
    n = a.ambient_dim
    rows = []
    for r in a._pivots.values():
        d = dict(r)
        d.update({n + k: x for k, x in r.items()})
        rows.append(d)
    rows += [dict(r) for r in b._pivots.values()]
    piv = _echelon(rows)
    out = [{k - n: x for k, x in row.items()} for p, row in piv.items() if p >= n]
    return Subspace.from_sparse(out, n)


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff ``b`` is a subspace of ``a``."""
    _check(a, b)
    return all(not a.reduce(r) for r in b._pivots.values())
