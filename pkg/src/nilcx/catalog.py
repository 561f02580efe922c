"""Built-in nilpotent Lie algebras with their complex structures.

Entries are addressed by short names such as ``g6_8``, ``B:5``, ``D:9``,
``D+R:10``, ``m0r:4``, ``h+R:2``.  Expected invariants are stored on each
entry and compared against computed values by the golden tests.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .cxstructs import AlmostComplexStructure
from .liecore import GradedTag, LieAlgebra

__all__ = [
    "CatalogEntry",
    "heisenberg",
    "heisenberg_plus_r",
    "m0",
    "m0r",
    "b_family",
    "c_family",
    "d_family",
    "d_family_plus_r",
    "d_dimension",
    "g68",
    "abelian",
    "resolve",
    "names",
    "corpus",
]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: tuple
    algebra: LieAlgebra
    j: AlmostComplexStructure | None = None
    grading: GradedTag | None = None
    expected: dict = field(default_factory=dict)
    note: str = ""


def _entry(name, params, basis, rel, degrees=None, pairs=None, expected=None, note=""):
    grading = GradedTag(tuple(degrees)) if degrees is not None else None
    g = LieAlgebra.from_relations(basis, rel, name=name, grading=grading)
    j = AlmostComplexStructure.from_pairs(g, pairs) if pairs is not None else None
    return CatalogEntry(name, tuple(params), g, j, grading, dict(expected or {}), note)


def heisenberg(k: int) -> CatalogEntry:
    if k < 1:
        raise ValueError("heisenberg needs k >= 1")
    basis = [s for i in range(1, k + 1) for s in (f"x{i}", f"y{i}")] + ["z"]
    rel = {(f"x{i}", f"y{i}"): {"z": 1} for i in range(1, k + 1)}
    deg = [1] * (2 * k) + [2]
    return _entry(f"h:{k}", (k,), basis, rel, deg, expected={"dim": 2 * k + 1, "s": 2, "b1": 2 * k})


def heisenberg_plus_r(k: int) -> CatalogEntry:
    """``h_{2k+1} + R`` with ``Jx = y``, ``Jz = w``; abelian complex structure."""
    if k < 1:
        raise ValueError("heisenberg_plus_r needs k >= 1")
    basis = [s for i in range(1, k + 1) for s in (f"x{i}", f"y{i}")] + ["z", "w"]
    rel = {(f"x{i}", f"y{i}"): {"z": 1} for i in range(1, k + 1)}
    deg = [1] * (2 * k) + [2, 1]
    pairs = [(f"x{i}", f"y{i}") for i in range(1, k + 1)] + [("z", "w")]
    exp = {"dim": 2 * k + 2, "s": 2, "b1": 2 * k + 1, "integrable": True, "abelian": True}
    return _entry(f"h+R:{k}", (k,), basis, rel, deg, pairs, exp)


def m0(n: int) -> CatalogEntry:
    """Filiform ``[e1, ei] = e_{i+1}``."""
    if n < 3:
        raise ValueError("m0 needs n >= 3")
    basis = [f"e{i}" for i in range(1, n + 1)]
    rel = {("e1", f"e{i}"): {f"e{i + 1}": 1} for i in range(2, n)}
    deg = [1] + [i - 1 for i in range(2, n + 1)]
    exp = {"dim": n, "s": n - 1, "b1": 2, "a": (2,) + (1,) * (n - 2), "filiform": True}
    return _entry(f"m0:{n}", (n,), basis, rel, deg, expected=exp)


def m0r(n: int) -> CatalogEntry:
    """Realification of the complex filiform algebra, with ``Jy_i = x_i``."""
    if n < 2:
        raise ValueError("m0r needs n >= 2")
    basis = [s for i in range(1, n + 1) for s in (f"x{i}", f"y{i}")]
    rel = {}
    for i in range(2, n):
        rel[("x1", f"x{i}")] = {f"x{i + 1}": 1}
        rel[(f"y{i}", "y1")] = {f"x{i + 1}": 1}
        rel[("x1", f"y{i}")] = {f"y{i + 1}": 1}
        rel[("y1", f"x{i}")] = {f"y{i + 1}": 1}
    deg = [1, 1] + [i - 1 for i in range(2, n + 1) for _ in (0, 1)]
    pairs = [(f"y{i}", f"x{i}") for i in range(1, n + 1)]
    exp = {"dim": 2 * n, "s": max(n - 1, 1), "b1": 4, "integrable": True, "complex_lie": True}
    return _entry(f"m0r:{n}", (n,), basis, rel, deg, pairs, exp)


def b_family(n: int) -> CatalogEntry:
    """Graded ``B(n)``, two dimensions per degree, with ``Jy_l = x_l``."""
    if n < 1:
        raise ValueError("b_family needs n >= 1")
    basis = [s for l in range(1, n + 1) for s in (f"x{l}", f"y{l}")]
    rel = {("x1", "y1"): {"y2": 1}} if n >= 2 else {}
    for l in range(2, n):
        rel[("x1", f"x{l}")] = {f"x{l + 1}": 1}
        rel[("y1", f"y{l}")] = {f"x{l + 1}": 1}
        rel[("x1", f"y{l}")] = {f"y{l + 1}": 1}
        rel[(f"x{l}", "y1")] = {f"y{l + 1}": 1}
    deg = [l for l in range(1, n + 1) for _ in (0, 1)]
    pairs = [(f"y{l}", f"x{l}") for l in range(1, n + 1)]
    exp = {"dim": 2 * n, "s": n, "b1": 3 if n >= 2 else 2, "integrable": True, "abelian": True, "nilpotent": True}
    return _entry(f"B:{n}", (n,), basis, rel, deg, pairs, exp)


def c_family(n_plus_1: int) -> CatalogEntry:
    """``C(n+1)`` for ``n >= 3``; the ``z_2`` in the first relation is read as ``w_2``.

    The accompanying J is integrable only for ``n = 3``; for larger n the
    Nijenhuis tensor is nonzero on ``(x1, x3)``.
    """
    n = n_plus_1 - 1
    if n < 3:
        raise ValueError("c_family needs n + 1 >= 4")
    basis = ["x1", "y1", "w2"] + [s for l in range(3, n + 1) for s in (f"x{l}", f"y{l}")] + [f"w{n + 1}"]
    rel = {
        ("x1", "y1"): {"w2": 1},
        ("x1", "w2"): {"x3": 1},
        ("y1", "w2"): {"y3": 1},
        ("x1", f"x{n}"): {f"w{n + 1}": 1},
        ("y1", f"y{n}"): {f"w{n + 1}": 1},
    }
    for l in range(3, n):
        rel[("x1", f"x{l}")] = {f"x{l + 1}": 1}
        rel[("y1", f"y{l}")] = {f"x{l + 1}": 1}
        rel[("y1", f"x{l}")] = {f"y{l + 1}": 1}
        rel[("x1", f"y{l}")] = {f"y{l + 1}": 1}
    deg = [1, 1, 2] + [l for l in range(3, n + 1) for _ in (0, 1)] + [n + 1]
    pairs = [("w2", f"w{n + 1}")] + [(f"y{l}", f"x{l}") for l in [1] + list(range(3, n + 1))]
    exp = {"dim": 2 * n, "s": n + 1, "b1": 2, "integrable": n == 3}
    return _entry(f"C:{n_plus_1}", (n_plus_1,), basis, rel, deg, pairs, exp,
                  note="first relation read as [x1,y1]=w2")


def d_dimension(n: int) -> int:
    """``dim D(n)``: two per odd degree, one per even degree."""
    return n + (n + 1) // 2


def _d_table(n: int, plus_r: bool):
    basis = []
    for l in range(1, n + 1):
        basis += [f"v{l}", f"u{l}"] if l % 2 else [f"w{l}"]
    if plus_r:
        basis.append("t")
    odd = [l for l in range(1, n + 1) if l % 2]
    even = [l for l in range(1, n + 1) if not l % 2]
    rel = {}
    for i in odd:
        for j in even:
            if i + j <= n:
                rel[(f"v{i}", f"w{j}")] = {f"u{i + j}": 1}
                rel[(f"w{j}", f"u{i}")] = {f"v{i + j}": 1}
    for l in odd:
        for i in odd:
            if l + i <= n:
                rel[(f"u{l}", f"v{i}")] = {f"w{l + i}": 1}
    deg = [l for l in range(1, n + 1) for _ in range(2 if l % 2 else 1)] + ([1] if plus_r else [])
    pairs = [(f"v{l}", f"u{l}") for l in odd]
    for k in range(n):
        if 4 * k + 4 <= n:
            pairs.append((f"w{4 * k + 2}", f"w{4 * k + 4}"))
        elif 4 * k + 2 <= n:
            pairs.append((f"w{4 * k + 2}", "t"))
    return basis, rel, deg, pairs


def d_family(n: int) -> CatalogEntry:
    """``D(n)``; carries J when ``n = 0, 1 (mod 4)``."""
    if n < 1:
        raise ValueError("d_family needs n >= 1")
    basis, rel, deg, pairs = _d_table(n, False)
    has_j = n % 4 in (0, 1)
    exp = {"dim": d_dimension(n), "s": n, "b1": 2}
    if has_j:
        exp["integrable"] = True
    return _entry(f"D:{n}", (n,), basis, rel, deg, pairs if has_j else None, exp)


def d_family_plus_r(n: int) -> CatalogEntry:
    """``D(n) + R`` spanned by an extra ``t``; carries J when ``n = 2, 3 (mod 4)``."""
    if n < 1:
        raise ValueError("d_family_plus_r needs n >= 1")
    basis, rel, deg, pairs = _d_table(n, True)
    has_j = n % 4 in (2, 3)
    exp = {"dim": d_dimension(n) + 1, "s": n, "b1": 3}
    if has_j:
        exp["integrable"] = True
    return _entry(f"D+R:{n}", (n,), basis, rel, deg, pairs if has_j else None, exp)


def g68() -> CatalogEntry:
    basis = [f"e{i}" for i in range(1, 7)]
    rel = {
        ("e1", "e2"): {"e3": 1},
        ("e1", "e3"): {"e4": 1},
        ("e2", "e3"): {"e5": 1},
        ("e1", "e4"): {"e6": 1},
        ("e2", "e5"): {"e6": 1},
    }
    pairs = [("e2", "e1"), ("e5", "e4"), ("e3", "e6")]
    exp = {
        "dim": 6, "s": 4, "b1": 2, "a": (2, 1, 2, 1), "lcs_dims": (6, 4, 3, 1, 0),
        "integrable": True, "abelian": False, "nilpotent": False, "E": 1,
    }
    return _entry("g6_8", (), basis, rel, [1, 1, 2, 3, 3, 4], pairs, exp)


def abelian(n: int) -> CatalogEntry:
    if n < 1:
        raise ValueError("abelian needs n >= 1")
    basis = [f"e{i}" for i in range(1, n + 1)]
    pairs = [(f"e{2 * i + 1}", f"e{2 * i + 2}") for i in range(n // 2)] if n % 2 == 0 else None
    exp = {"dim": n, "s": 1, "b1": n}
    if pairs is not None:
        exp.update(integrable=True, abelian=True, complex_lie=True, nilpotent=True)
    return _entry(f"abelian:{n}", (n,), basis, {}, [1] * n, pairs, exp)


FAMILIES: dict[str, Callable[..., CatalogEntry]] = {
    "h": heisenberg,
    "h+R": heisenberg_plus_r,
    "m0": m0,
    "m0r": m0r,
    "B": b_family,
    "C": c_family,
    "D": d_family,
    "D+R": d_family_plus_r,
    "abelian": abelian,
}


def names() -> list:
    return ["g6_8"] + [f"{k}:<n>" for k in FAMILIES]


def resolve(spec: str) -> CatalogEntry:
    """Look up ``g6_8`` or ``family:n``."""
    if spec == "g6_8":
        return g68()
    fam, sep, arg = spec.rpartition(":")
    if not sep or fam not in FAMILIES:
        raise KeyError(f"unknown catalog entry {spec!r}")
    try:
        n = int(arg)
    except ValueError:
        raise KeyError(f"catalog parameter must be an integer: {spec!r}") from None
    return FAMILIES[fam](n)


CORPUS = (
    "g6_8", "B:2", "B:3", "B:4", "B:5", "m0r:2", "m0r:3", "m0r:4", "m0r:5",
    "h+R:1", "h+R:2", "D:1", "D:4", "D:5", "D:8", "D:9", "D+R:2", "D+R:3", "D+R:6", "D+R:7",
    "C:4", "abelian:2", "abelian:4",
)


def corpus(integrable_only: bool = True) -> list:
    """Catalog entries with a J; by default only those whose J is integrable."""
    out = [resolve(s) for s in CORPUS]
    if not integrable_only:
        out += [c_family(5), c_family(6)]
    return [e for e in out if e.j is not None and (not integrable_only or e.expected.get("integrable"))]
