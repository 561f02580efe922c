"""Exhaustive search over signed-matching almost complex structures.

A candidate pairs the basis vectors as ``(i, j)``, ``i < j``, with a sign
``s`` and sets ``J e_i = s e_j``, ``J e_j = -s e_i``.  Candidates are
indexed by ``matching_rank * 2^(n/2) + sign_rank`` so disjoint index ranges
can be checked independently.  An empty result only says there is no hit
inside this family.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cxstructs import (
    AlmostComplexStructure,
    ClassificationReport,
    classify,
    is_nilpotent_structure,
)
from .exactlin import Matrix, ZERO
from .liecore import LieAlgebra

__all__ = [
    "JCandidate",
    "SearchResult",
    "CLASSES",
    "count",
    "candidate_at",
    "enumerate_candidates",
    "candidate_for",
    "search",
    "verify_certificate",
]

CLASSES = ("integrable", "abelian", "complex_lie", "nilpotent")


@dataclass(frozen=True)
class JCandidate:
    """``matching`` holds 1-based pairs ``(i, j)`` with ``i < j``, sorted by ``i``."""

    index: int
    matching: tuple
    signs: tuple

    def permutation(self):
        """``(perm, sgn)`` with ``J e_k = sgn[k] e_perm[k]`` (0-based)."""
        n = 2 * len(self.matching)
        perm, sgn = [0] * n, [0] * n
        for (i, j), s in zip(self.matching, self.signs):
            perm[i - 1], sgn[i - 1] = j - 1, s
            perm[j - 1], sgn[j - 1] = i - 1, -s
        return perm, sgn

    def structure(self) -> AlmostComplexStructure:
        perm, sgn = self.permutation()
        n = len(perm)
        entries = [ZERO] * (n * n)
        for k in range(n):
            entries[perm[k] * n + k] = Fraction(sgn[k])
        return AlmostComplexStructure(Matrix(n, n, entries))

    def describe(self, names=None) -> str:
        parts = []
        for (i, j), s in zip(self.matching, self.signs):
            a = names[i - 1] if names else f"e{i}"
            b = names[j - 1] if names else f"e{j}"
            parts.append(f"J{a}={'' if s > 0 else '-'}{b}")
        return ", ".join(parts)


@lru_cache(maxsize=None)
def _matchings(n: int) -> int:
    """``(n-1)!!`` for even n."""
    return 1 if n <= 0 else (n - 1) * _matchings(n - 2)


def count(n: int) -> int:
    if n % 2:
        raise ValueError(f"odd dimension {n} has no almost complex structure")
    return _matchings(n) * 2 ** (n // 2)


def _unrank_matching(n: int, r: int) -> tuple:
    free = list(range(1, n + 1))
    pairs = []
    while free:
        first = free.pop(0)
        block = _matchings(len(free) - 1)
        choice, r = divmod(r, block)
        pairs.append((first, free.pop(choice)))
    return tuple(pairs)


def candidate_at(n: int, index: int) -> JCandidate:
    total = count(n)
    if not 0 <= index < total:
        raise IndexError(f"candidate index {index} out of range [0, {total})")
    half = n // 2
    mr, sr = divmod(index, 2 ** half)
    signs = tuple(-1 if (sr >> k) & 1 else 1 for k in range(half))
    return JCandidate(index, _unrank_matching(n, mr), signs)


def enumerate_candidates(n: int, start: int = 0, stop: int | None = None):
    stop = count(n) if stop is None else min(stop, count(n))
    for k in range(start, stop):
        yield candidate_at(n, k)


def candidate_for(J: AlmostComplexStructure) -> JCandidate | None:
    """The candidate equal to J, if J is a signed matching."""
    sm = J.signed_matching()
    if sm is None:
        return None
    pairs, signs = sm
    n = J.dim
    free = list(range(1, n + 1))
    mr = 0
    for i, j in pairs:
        free.remove(i + 1)
        mr += free.index(j + 1) * _matchings(len(free) - 1)
        free.remove(j + 1)
    sr = sum(1 << k for k, s in enumerate(signs) if s < 0)
    return candidate_at(n, mr * 2 ** (n // 2) + sr)


# ---------------------------------------------------------------------------
# fast path: J as a signed permutation acting on sparse bracket tables
# ---------------------------------------------------------------------------


def _acc(out: dict, terms, f):
    for k, c in terms:
        nv = out.get(k, ZERO) + f * c
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)


def _jterms(terms, perm, sgn):
    return [(perm[k], sgn[k] * c) for k, c in terms]


def _integrable_fast(g: LieAlgebra, perm, sgn) -> bool:
    br = g.basis_bracket
    n = g.dim
    for i in range(n):
        pi, si = perm[i], sgn[i]
        for j in range(i + 1, n):
            pj, sj = perm[j], sgn[j]
            out: dict = {}
            _acc(out, br(pi, pj), si * sj)
            _acc(out, br(i, j), -1)
            _acc(out, _jterms(br(pi, j), perm, sgn), -si)
            _acc(out, _jterms(br(i, pj), perm, sgn), -sj)
            if out:
                return False
    return True


def _abelian_fast(g: LieAlgebra, perm, sgn) -> bool:
    br = g.basis_bracket
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            out: dict = {}
            _acc(out, br(perm[i], perm[j]), sgn[i] * sgn[j])
            _acc(out, br(i, j), -1)
            if out:
                return False
    return True


def _complex_lie_fast(g: LieAlgebra, perm, sgn) -> bool:
    br = g.basis_bracket
    n = g.dim
    for i in range(n):
        for j in range(n):
            out: dict = {}
            _acc(out, br(perm[i], j), sgn[i])
            _acc(out, _jterms(br(i, j), perm, sgn), -1)
            if out:
                return False
    return True


def _passes(g: LieAlgebra, cand: JCandidate, cls: str) -> bool:
    perm, sgn = cand.permutation()
    if cls == "abelian":
        return _abelian_fast(g, perm, sgn)
    if cls == "complex_lie":
        return _complex_lie_fast(g, perm, sgn)
    if not _integrable_fast(g, perm, sgn):
        return False
    if cls == "nilpotent":
        return is_nilpotent_structure(g, cand.structure())[0]
    return True


def _scan(args):
    g, cls, start, stop = args
    n = g.dim
    return [c for c in enumerate_candidates(n, start, stop) if _passes(g, c, cls)]


@dataclass
class SearchResult:
    algebra: str
    class_filter: str
    total: int
    hits: list = field(default_factory=list)

    @property
    def hit_indices(self) -> list:
        return [c.index for c in self.hits]

    def summary(self) -> str:
        if not self.hits:
            return f"{self.class_filter}: none in ansatz ({self.total} candidates)"
        return f"{self.class_filter}: {len(self.hits)} of {self.total} candidates"

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "class": self.class_filter,
            "candidates": self.total,
            "hits": len(self.hits),
            "hit_list": [
                {"index": c.index, "matching": [list(p) for p in c.matching], "signs": list(c.signs)}
                for c in self.hits
            ],
        }


def search(g: LieAlgebra, class_filter: str = "integrable", workers: int = 1, chunk: int = 4096) -> SearchResult:
    """All candidates of the given class, sorted by index."""
    if class_filter not in CLASSES:
        raise ValueError(f"unknown class {class_filter!r}; expected one of {', '.join(CLASSES)}")
    total = count(g.dim)
    ranges = [(g, class_filter, a, min(a + chunk, total)) for a in range(0, total, chunk)]
    if workers > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan, ranges))
    else:
        parts = [_scan(r) for r in ranges]
    hits = sorted((c for part in parts for c in part), key=lambda c: c.index)
    return SearchResult(g.name, class_filter, total, hits)


def verify_certificate(g: LieAlgebra, J) -> ClassificationReport:
    """Re-check a structure (or candidate) through the general classification path."""
    if isinstance(J, JCandidate):
        J = J.structure()
    return classify(g, J)
