"""Inequalities relating nil-index, Betti numbers and complex structures.

Every check carries a hypothesis.  When it is unmet the check is reported
as ``skipped`` (``holds is None``); lhs and rhs are still filled in where
they make sense, so the report shows what the bound would have said.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .catalog import CatalogEntry, corpus as catalog_corpus, d_dimension, d_family, d_family_plus_r
from .cecohom import betti
from .cxstructs import (
    AlmostComplexStructure,
    is_complex_lie_structure,
    is_integrable,
    is_nilpotent_structure,
    j_series,
    v10_filtration,
)
from .liecore import LieAlgebra, is_filiform, lower_central_series, nil_index

__all__ = [
    "BoundCheck",
    "BoundsReport",
    "Facts",
    "facts",
    "check_e_bound",
    "check_nilpotent_bound",
    "check_complex_lie_bounds",
    "check_b1_bound",
    "check_ge5",
    "check_mainlemma_consequence",
    "check_upper_bound",
    "evaluate",
    "evaluate_corpus",
    "check_filiform_corollary",
    "check_main_estimate",
    "check_abstract_identity",
    "main_estimate_witness",
]


@dataclass(frozen=True)
class BoundCheck:
    name: str
    relation: str
    hypothesis_met: bool
    lhs: object
    rhs: object
    holds: bool | None
    sharp: bool | None
    detail: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.holds is None:
            return "skipped"
        return "pass" if self.holds else "fail"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "relation": self.relation,
            "hypothesis_met": self.hypothesis_met,
            "lhs": _plain(self.lhs),
            "rhs": _plain(self.rhs),
            "holds": self.holds,
            "sharp": self.sharp,
            "status": self.status,
            "detail": {k: _plain(v) for k, v in sorted(self.detail.items())},
        }


def _plain(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def _compare(name, relation, met, lhs, rhs, detail=None) -> BoundCheck:
    if relation == "<=":
        ok = lhs <= rhs
    elif relation == ">=":
        ok = lhs >= rhs
    else:
        ok = lhs == rhs
    return BoundCheck(
        name, relation, met, lhs, rhs,
        ok if met else None,
        (lhs == rhs) if met else None,
        dict(detail or {}),
    )


@dataclass
class BoundsReport:
    target: str
    checks: list

    @property
    def all_hold(self) -> bool:
        return all(c.holds is not False for c in self.checks)

    def get(self, name: str) -> BoundCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {"target": self.target, "checks": [c.as_dict() for c in self.checks]}


@dataclass(frozen=True)
class Facts:
    """Invariants of a pair computed once and shared by the checks."""

    dim: int
    s: int
    b1: int
    lcs_dims: tuple
    integrable: bool
    complex_lie: bool
    nilpotent: bool
    equality_count: int
    j_dims: tuple
    v10_dims: tuple

    def lcs_dim(self, m: int) -> int:
        """``dim g^m`` (1-based), zero past the end."""
        return self.lcs_dims[m - 1] if 0 < m <= len(self.lcs_dims) else 0


def facts(g: LieAlgebra, J: AlmostComplexStructure) -> Facts:
    integ, _ = is_integrable(g, J)
    js = j_series(g, J)
    return Facts(
        dim=g.dim,
        s=nil_index(g),
        b1=betti(g, 1),
        lcs_dims=tuple(v.dim for v in lower_central_series(g)),
        integrable=integ,
        complex_lie=is_complex_lie_structure(g, J)[0],
        nilpotent=integ and is_nilpotent_structure(g, J)[0],
        equality_count=js.equality_count,
        j_dims=js.dims,
        v10_dims=tuple(v.dim for v in v10_filtration(g, J)) if integ else (),
    )


def _facts(g, J, f):
    return f if f is not None else facts(g, J)


def check_e_bound(g, J, f: Facts | None = None) -> BoundCheck:
    """``2(s - E) <= dim g`` for integrable J."""
    f = _facts(g, J, f)
    return _compare("e_bound", "<=", f.integrable, 2 * (f.s - f.equality_count), f.dim,
                    {"s": f.s, "E": f.equality_count})


def check_nilpotent_bound(g, J, f: Facts | None = None) -> BoundCheck:
    """``s <= dim/2`` for nilpotent J."""
    f = _facts(g, J, f)
    return _compare("nilpotent_bound", "<=", f.nilpotent, f.s, Fraction(f.dim, 2))


def check_complex_lie_bounds(g, J, f: Facts | None = None) -> list:
    """``s <= dim/2 - 1`` and ``b1 >= 4`` for complex Lie structures.

    Applied from real dimension 4 on; the one-dimensional complex line has
    ``s = 1`` and ``b1 = 2``.
    """
    f = _facts(g, J, f)
    met = f.complex_lie and f.dim >= 4
    return [
        _compare("complex_lie_s", "<=", met, f.s, Fraction(f.dim, 2) - 1),
        _compare("complex_lie_b1", ">=", met, f.b1, 4),
    ]


def check_b1_bound(g, J, f: Facts | None = None) -> BoundCheck:
    """``b1 >= 3`` for nilpotent J on algebras of dimension at least 4."""
    f = _facts(g, J, f)
    return _compare("b1_bound", ">=", f.nilpotent and f.dim >= 4, f.b1, 3)


def check_ge5(g, J, f: Facts | None = None) -> BoundCheck:
    """``dim g - dim g^4 >= 5`` for integrable J and ``dim g >= 6``."""
    f = _facts(g, J, f)
    return _compare("ge5", ">=", f.integrable and f.dim >= 6, f.dim - f.lcs_dim(4), 5)


def _runs(dims) -> list:
    """``(k, p)`` with ``dims[k-1] != dims[k] = ... = dims[k+p] != dims[k+p+1]``, k >= 2, p >= 1."""
    out = []
    for k in range(2, len(dims)):
        if dims[k - 1] == dims[k]:
            continue
        p = 0
        while k + p + 1 < len(dims) and dims[k + p + 1] == dims[k]:
            p += 1
        if p >= 1 and k + p + 1 < len(dims):
            out.append((k, p))
    return out


def check_mainlemma_consequence(g, J, f: Facts | None = None) -> BoundCheck:
    """Equality runs in the ``V^{1,0}`` filtration force a drop of at least 2.

    A run ``V_{k-1} < V_k = ... = V_{k+p} < V_{k+p+1}`` (k >= 2, p >= 1)
    gives ``dim g^{k+p+1} - dim g^{k+p+2} >= 2``.  The runs of the
    ``g^l(J)`` chain with the same shape are listed in ``detail`` for
    comparison; they are not asserted.
    """
    f = _facts(g, J, f)
    runs = _runs(f.v10_dims) if f.integrable else []
    drops = [f.lcs_dim(k + p + 1) - f.lcs_dim(k + p + 2) for k, p in runs]
    primal = _runs((None,) + f.j_dims + (0,))
    detail = {
        "runs": [[k, p] for k, p in runs],
        "drops": drops,
        "j_series_runs": [[k, p, f.lcs_dim(k + p + 1) - f.lcs_dim(k + p + 2)] for k, p in primal],
    }
    lhs = min(drops) if drops else None
    if not runs:
        return BoundCheck("mainlemma", ">=", False, None, 2, None, None, detail)
    return _compare("mainlemma", ">=", True, lhs, 2, detail)


def check_upper_bound(g, J, f: Facts | None = None) -> BoundCheck:
    """``s <= dim - 2`` for integrable J, ``dim >= 4``."""
    f = _facts(g, J, f)
    return _compare("upper_bound", "<=", f.integrable and f.dim >= 4, f.s, f.dim - 2)


def evaluate(g: LieAlgebra, J: AlmostComplexStructure, target: str | None = None) -> BoundsReport:
    f = facts(g, J)
    checks = [
        check_e_bound(g, J, f),
        check_nilpotent_bound(g, J, f),
        *check_complex_lie_bounds(g, J, f),
        check_b1_bound(g, J, f),
        check_ge5(g, J, f),
        check_mainlemma_consequence(g, J, f),
        check_upper_bound(g, J, f),
    ]
    return BoundsReport(target or g.name, checks)


def evaluate_corpus(entries: Iterable[CatalogEntry] | None = None) -> list:
    entries = catalog_corpus() if entries is None else entries
    return [evaluate(e.algebra, e.j, e.name) for e in entries if e.j is not None]


def check_filiform_corollary(entries: Iterable[CatalogEntry], search_limit: int = 8) -> list:
    """For every even-dimensional filiform entry: ``dim - dim g^4 = 4`` (dim >= 6)
    and no integrable J in the signed-matching family (dim <= ``search_limit``)."""
    from .jsearch import search

    out = []
    for e in entries:
        g = e.algebra
        if g.dim % 2 or not is_filiform(g):
            continue
        lcs = [v.dim for v in lower_central_series(g)]
        gap = g.dim - (lcs[3] if len(lcs) > 3 else 0)
        detail = {"algebra": e.name, "dim_minus_g4": gap}
        if g.dim <= search_limit:
            res = search(g, "integrable")
            detail["candidates"] = res.total
            detail["integrable_hits"] = len(res.hits)
            ok = not res.hits
        else:
            ok = True
        if g.dim >= 6:
            ok = ok and gap == 4
        out.append(BoundCheck(f"filiform:{e.name}", "==", True, gap, 4 if g.dim >= 6 else gap, ok, None, detail))
    return out


def main_estimate_witness(dim: int) -> CatalogEntry:
    """D-family member of even dimension ``dim >= 4`` with an integrable J."""
    if dim % 2 or dim < 4:
        raise ValueError("witnesses exist for even dimensions >= 4")
    m, r = divmod(dim, 6)
    if r == 0:
        return d_family(4 * m)
    if r == 2:
        return d_family(4 * m + 1)
    return d_family_plus_r(4 * m + 2)


def check_main_estimate(dims: Iterable[int], verify_j: bool = True) -> list:
    """``floor(4n/3) <= s(witness) <= 2n - 2`` for each even ``2n`` in ``dims``."""
    out = []
    for dim in dims:
        if dim % 2 or dim < 4:
            continue
        e = main_estimate_witness(dim)
        g = e.algebra
        n = dim // 2
        s = nil_index(g)
        integ = is_integrable(g, e.j, cross_check=False)[0] if verify_j else True
        low = (4 * n) // 3
        ok = integ and g.dim == dim and low <= s <= 2 * n - 2
        detail = {"witness": e.name, "integrable": integ, "upper": 2 * n - 2}
        out.append(BoundCheck(f"main_estimate:{dim}", ">=", True, s, low, ok, s == low, detail))
    return out


def check_abstract_identity(ns: Iterable[int]) -> list:
    """``s(D(n)) = floor(2 dim D(n) / 3)``."""
    out = []
    for n in ns:
        g = d_family(n).algebra
        s = nil_index(g)
        rhs = (2 * g.dim) // 3
        ok = s == rhs and g.dim == d_dimension(n)
        out.append(BoundCheck(f"abstract_identity:D:{n}", "==", True, s, rhs, ok, True, {"dim": g.dim}))
    return out
