"""Command-line interface.

Exit codes: 0 when every asserted property holds, 1 when a check fails,
2 for unreadable or invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .bounds import (
    check_abstract_identity,
    check_filiform_corollary,
    check_main_estimate,
    evaluate,
    evaluate_corpus,
)
from .catalog import FAMILIES, CatalogEntry, corpus, m0, resolve
from .cecohom import betti, betti_numbers, covector, d
from .cxstructs import (
    InvalidStructure,
    NotIntegrableError,
    canonical_flag,
    check_salamon_condition,
    classify,
    express_d_in_coframe,
    j_series,
    v10_filtration,
)
from .dsl import ParseError, emit_algebra, emit_j, format_expr, parse_algebra, parse_j
from .exactlin import format_scalar
from .jsearch import CLASSES, search, verify_certificate
from .liecore import JacobiError, NotNilpotentError, a_sequence, is_filiform, lower_central_series, nil_index, validate_jacobi


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(source: str, jpath: str | None = None, need_j: bool = False, validate: bool = True):
    """``(algebra, J or None, label)`` from a file path or a catalog name."""
    if os.path.exists(source):
        try:
            g = parse_algebra(_read(source), validate=validate)
        except ParseError as exc:
            raise InputError(f"{source}: {exc}") from None
        j = None
    else:
        try:
            entry = resolve(source)
        except (KeyError, ValueError) as exc:
            raise InputError(f"{source}: no such file or catalog entry ({exc})") from None
        g, j = entry.algebra, entry.j
    if jpath is not None:
        try:
            j = parse_j(_read(jpath), g)
        except ParseError as exc:
            raise InputError(f"{jpath}: {exc}") from None
    if need_j and j is None:
        raise InputError(f"{source}: an almost complex structure is required (--j FILE)")
    return g, j, source


def _check(name, holds, value=None, **extra) -> dict:
    out = {"name": name, "holds": holds}
    if value is not None:
        out["value"] = value
    out.update(extra)
    return out


def _s(x):
    return format_scalar(x)


def cmd_check(args):
    g, _, label = _load(args.source, validate=False)
    bad = validate_jacobi(g)
    results = [_check("jacobi", not bad, violations=[[g.basis_names[k] for k in t[:3]] for t in bad])]
    lines = [f"{label}: dimension {g.dim}, {len(g.brackets)} brackets, field {g.field}"]
    if bad:
        lines.append(f"Jacobi identity fails on {len(bad)} triple(s)")
        for i, j, k, _ in bad[:10]:
            lines.append(f"  ({g.basis_names[i]}, {g.basis_names[j]}, {g.basis_names[k]})")
        return results, lines, {"source": label}
    lines.append("Jacobi identity holds")
    lcs = lower_central_series(g)
    nil = lcs[-1].dim == 0
    results.append(_check("nilpotent", nil, nil_index(g) if nil else None))
    lines.append(f"nilpotent: {'yes, s = ' + str(nil_index(g)) if nil else 'no'}")
    if g.grading is not None:
        off = g.grading.check(g)
        results.append(_check("grading", not off))
        lines.append("grading compatible" if not off else f"grading violated by {len(off)} bracket(s)")
    return results, lines, {"source": label}


def cmd_lcs(args):
    g, _, label = _load(args.source)
    try:
        dims = [v.dim for v in lower_central_series(g)]
        s, a = nil_index(g), list(a_sequence(g))
    except NotNilpotentError as exc:
        return [_check("nilpotent", False)], [str(exc)], {"source": label}
    fil = is_filiform(g)
    lines = [
        f"{label}: lower central series dims {tuple(dims)}",
        f"nil-index s = {s}",
        f"a-sequence {tuple(a)}",
        f"filiform: {'yes' if fil else 'no'}",
    ]
    results = [_check("nilpotent", True), _check("lcs_dims", True, dims), _check("s", True, s),
               _check("a_sequence", True, a), _check("filiform", True, fil)]
    return results, lines, {"source": label}


def cmd_cohomology(args):
    g, _, label = _load(args.source)
    bs = list(betti_numbers(g)) if args.degree is None else None
    results, lines = [], []
    if bs is not None:
        lines.append(f"{label}: Betti numbers {tuple(bs)}")
        euler = sum((-1) ** k * b for k, b in enumerate(bs))
        results.append(_check("betti", True, bs))
        results.append(_check("euler_characteristic_zero", euler == 0 or g.dim == 0, euler))
    else:
        b = betti(g, args.degree)
        lines.append(f"{label}: b_{args.degree} = {b}")
        results.append(_check(f"b{args.degree}", True, b))
    names = [n for n in g.basis_names]
    dual = [f"{n}*" for n in names]
    diffs = {}
    for k in range(g.dim):
        form = d(g, covector(g.dim, k))
        txt = form.format(dual) if form.coeffs else "0"
        diffs[dual[k]] = txt
        lines.append(f"  d {dual[k]} = {txt}")
    results.append(_check("differentials", True, diffs))
    return results, lines, {"source": label}


def cmd_classify(args):
    g, j, label = _load(args.source, args.j, need_j=True)
    rep = classify(g, j)
    js = j_series(g, j)
    lines = [
        f"{label}:",
        f"  integrable          {rep.integrable}",
        f"  abelian             {rep.abelian}",
        f"  complex Lie         {rep.complex_lie}",
        f"  nilpotent structure {rep.nilpotent_structure}",
        f"  g^l(J) dims {js.dims}, equalities E = {js.equality_count}",
    ]
    for key, w in sorted(rep.witnesses.items()):
        lines.append(f"  not {key}: {w}")
    d_ = rep.as_dict()
    results = [_check(k, d_[k]) for k in ("integrable", "abelian", "complex_lie", "nilpotent_structure")]
    results.append(_check("implications", rep.implications_hold()))
    results.append(_check("j_series", True, list(js.dims), equality_count=js.equality_count))
    if rep.integrable:
        results.append(_check("v10_dims", True, [v.dim for v in v10_filtration(g, j)]))
    ok = rep.implications_hold()
    for cls in args.require or []:
        key = {"nilpotent": "nilpotent_structure"}.get(cls, cls)
        holds = d_[key]
        results.append(_check(f"require:{cls}", holds))
        ok = ok and holds
    return results, lines, {"source": label, "j": args.j}, ok


def cmd_flag(args):
    g, j, label = _load(args.source, args.j, need_j=True)
    try:
        flag = canonical_flag(g, j)
    except NotIntegrableError as exc:
        return [_check("integrable", False)], [str(exc)], {"source": label, "j": args.j}
    names = [f"{n}*" for n in g.basis_names]
    lines = [f"{label}: holomorphic coframe"]
    forms = []
    for k, (w, lvl) in enumerate(zip(flag.forms, flag.levels), 1):
        txt = format_expr(w, names)
        forms.append({"form": txt, "level": lvl})
        lines.append(f"  w{k} = {txt}    (level {lvl})")
    ok, where = check_salamon_condition(g, flag)
    lines.append("ideal condition holds" if ok else f"ideal condition fails at w{where}")
    return [_check("integrable", True), _check("flag", True, forms), _check("salamon", ok)], lines, \
        {"source": label, "j": args.j}


def cmd_dexpr(args):
    g, j, label = _load(args.source, args.j, need_j=True)
    try:
        flag = canonical_flag(g, j)
    except NotIntegrableError as exc:
        return [_check("integrable", False)], [str(exc)], {"source": label, "j": args.j}
    ks = [args.k] if args.k else list(range(1, len(flag) + 1))
    if any(not 1 <= k <= len(flag) for k in ks):
        raise InputError(f"--k must lie between 1 and {len(flag)}")
    names = [f"{n}*" for n in g.basis_names]
    lines, exps = [], []
    for k in range(1, len(flag) + 1):
        lines.append(f"  w{k} = {format_expr(flag.forms[k - 1], names)}")
    for k in ks:
        exp = express_d_in_coframe(g, flag, k)
        lines.append(exp.format())
        exps.append({"k": k, "terms": [[_s(c), a, b] for c, a, b in exp.terms()]})
    return [_check("dexpr", True, exps)], lines, {"source": label, "j": args.j, "k": args.k}


def _bounds_lines(rep):
    lines = [f"{rep.target}:"]
    for c in rep.checks:
        lhs = "-" if c.lhs is None else c.lhs
        tag = c.status + (", sharp" if c.sharp else "")
        lines.append(f"  {c.name:16s} {lhs} {c.relation} {c.rhs}   [{tag}]")
    return lines


def cmd_bounds(args):
    if args.corpus:
        if args.corpus != "catalog":
            raise InputError(f"unknown corpus {args.corpus!r}; only 'catalog' is built in")
        reports = evaluate_corpus()
        results, lines = [], []
        for rep in reports:
            results += [dict(c.as_dict(), target=rep.target) for c in rep.checks]
            lines += _bounds_lines(rep)
        if args.all:
            extra = (
                check_filiform_corollary([m0(n) for n in (4, 5, 6, 7, 8)])
                + check_main_estimate(range(4, 31, 2))
                + check_abstract_identity(range(1, 41))
            )
            for c in extra:
                results.append(c.as_dict())
                lines.append(f"  {c.name:24s} {c.lhs} {c.relation} {c.rhs}   [{c.status}]")
        return results, lines, {"corpus": args.corpus, "all": bool(args.all)}
    if not args.source:
        raise InputError("give an algebra source or --corpus catalog")
    g, j, label = _load(args.source, args.j, need_j=True)
    rep = evaluate(g, j, label)
    return [c.as_dict() for c in rep.checks], _bounds_lines(rep), {"source": label, "j": args.j}


def cmd_search(args):
    g, _, label = _load(args.source)
    if g.dim % 2:
        raise InputError(f"{label}: odd dimension {g.dim} admits no almost complex structure")
    t0 = time.perf_counter()
    res = search(g, args.cls, workers=args.workers)
    elapsed = time.perf_counter() - t0
    lines = [f"{label}: {res.summary()}"]
    verified = True
    key = {"nilpotent": "nilpotent_structure"}.get(args.cls, args.cls)
    for c in res.hits[: args.show]:
        lines.append(f"  #{c.index}: {c.describe(g.basis_names)}")
    for c in res.hits:
        rep = verify_certificate(g, c)
        verified = verified and rep.as_dict()[key]
    if len(res.hits) > args.show:
        lines.append(f"  ... {len(res.hits) - args.show} more")
    lines.append(f"certificates re-verified: {'yes' if verified else 'NO'}")
    if not args.json:
        lines.append(f"({elapsed:.2f}s)")
    out = res.as_dict()
    return [_check("search", True, out), _check("certificates", verified)], lines, \
        {"source": label, "class": args.cls}


def cmd_catalog(args):
    if args.list or not args.name:
        rows = ["g6_8"] + [f"{k}:<n>" for k in FAMILIES]
        lines = ["catalog entries:"] + [f"  {r}" for r in rows]
        lines.append("corpus: " + ", ".join(e.name for e in corpus()))
        return [_check("catalog", True, rows)], lines, {}
    try:
        entry: CatalogEntry = resolve(args.name)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from None
    text = emit_algebra(entry.algebra)
    jtext = emit_j(entry.j, entry.algebra) if entry.j is not None else None
    lines = []
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text)
        lines.append(f"wrote {args.emit}")
    if args.emit_j:
        if jtext is None:
            raise InputError(f"{args.name} carries no almost complex structure")
        with open(args.emit_j, "w", encoding="utf-8") as fh:
            fh.write(jtext)
        lines.append(f"wrote {args.emit_j}")
    if not lines:
        lines = [text.rstrip()] + (["", jtext.rstrip()] if jtext else [])
    exp = {k: (list(v) if isinstance(v, tuple) else v) for k, v in entry.expected.items()}
    return [_check("entry", True, {"algebra": text, "j": jtext, "expected": exp, "note": entry.note})], lines, \
        {"name": args.name}


COMMANDS = {
    "check": cmd_check,
    "lcs": cmd_lcs,
    "cohomology": cmd_cohomology,
    "classify": cmd_classify,
    "flag": cmd_flag,
    "bounds": cmd_bounds,
    "search": cmd_search,
    "catalog": cmd_catalog,
    "dexpr": cmd_dexpr,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nilcx", description="Complex structures on nilpotent Lie algebras.")
    p.add_argument("--version", action="version", version=f"nilcx {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, source=True, j=False, source_optional=False):
        sp = sub.add_parser(name, help=help_)
        if source:
            sp.add_argument("source", nargs="?" if source_optional else None,
                            help="algebra file or catalog name (e.g. g6_8, D:9)")
        if j:
            sp.add_argument("--j", help="J file; defaults to the catalog J")
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        return sp

    add("check", "validate an algebra file")
    add("lcs", "lower central series, nil-index, a-sequence")
    sp = add("cohomology", "Betti numbers and differentials")
    sp.add_argument("--degree", type=int)
    sp = add("classify", "integrable / abelian / complex Lie / nilpotent", j=True)
    sp.add_argument("--require", action="append", choices=CLASSES, help="fail unless J lies in this class")
    add("flag", "holomorphic coframe adapted to the V^{1,0} filtration", j=True)
    sp = add("dexpr", "d w^k in the holomorphic coframe", j=True)
    sp.add_argument("--k", type=int)
    sp = add("bounds", "nil-index and Betti bounds", j=True, source_optional=True)
    sp.add_argument("--corpus")
    sp.add_argument("--all", action="store_true", help="also run corpus-level theorems")
    sp = add("search", "signed-matching search for complex structures")
    sp.add_argument("--class", dest="cls", default="integrable", choices=CLASSES)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--show", type=int, default=20)
    sp = sub.add_parser("catalog", help="list or emit built-in algebras")
    sp.add_argument("name", nargs="?")
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--emit", metavar="FILE")
    sp.add_argument("--emit-j", metavar="FILE")
    sp.add_argument("--json", action="store_true")
    return p


def _passed(results) -> bool:
    return all(r.get("holds") is not False for r in results)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"nilcx: {exc}", file=sys.stderr)
        return 2
    except (ParseError, JacobiError, InvalidStructure, NotNilpotentError) as exc:
        print(f"nilcx: {exc}", file=sys.stderr)
        return 2
    results, lines, inputs = out[:3]
    ok = out[3] if len(out) > 3 else _passed(results)
    if args.json:
        report = {"command": args.command, "inputs": inputs, "results": results, "version": __version__,
                  "ok": ok}
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
