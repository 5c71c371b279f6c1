"""Command line interface: group reports, cohomology bases, brackets of
decorated classes, and the verification sweeps.

File formats are JSON with exact scalar strings.  A group file holds
{"dimension": n, "cyclotomicOrder": N, "generators": [matrix, ...]},
each matrix an n x n array of scalar strings, plus an optional "names"
list for the generators and an optional enumeration "bound".  A class
file holds {"homologicalDegree": p, "terms": [...]} where each term is
{"group": word or element index, "coeff": scalar string,
"exponents": [e1..en], "wedge": [i1 < ... < ip]}; wedge entries are
1-based, matching the printed names d1..dn.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
Set SKEWBRACK_THREADS to parallelize independent verification tuples.
"""

import argparse
import json
import os
import sys

from .bracket import gerstenhaber, perp_vanishing_applies
from .cochain import (
    Cochain,
    cohomology_basis,
    cohomology_dim_direct,
    project,
    reynolds,
)
from .groups import enumerate_group, geometry, resolve_word
from .koszul import (
    appendix_suite,
    chain_bracket_cochain,
    homotopy_sweep,
    schouten_graded_laws,
    schouten_random_check,
)
from .linalg import Matrix
from .polyvec import Polyvector
from .scalars import parse_scalar, print_scalar


IDENTITY_NAMES = (
    ["lEQ%d" % i for i in range(1, 6)]
    + ["rEQ%d" % i for i in range(1, 6)]
    + ["lrEQ%d" % i for i in range(1, 8)]
)


# ----------------------------------------------------------- file formats


def load_group_file(path):
    """Parse a group file; returns (group, generator names or None)."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: group file must be a JSON object")
    for key in ("dimension", "cyclotomicOrder", "generators"):
        if key not in data:
            raise ValueError(f"{path}: missing field {key!r}")
    n = data["dimension"]
    order = data["cyclotomicOrder"]
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"{path}: dimension must be a positive integer")
    if not isinstance(order, int) or order < 1:
        raise ValueError(f"{path}: cyclotomicOrder must be a positive integer")
    raw_gens = data["generators"]
    if not isinstance(raw_gens, list) or not raw_gens:
        raise ValueError(f"{path}: generators must be a nonempty list")
    gens = []
    for pos, rows in enumerate(raw_gens, 1):
        if (not isinstance(rows, list) or len(rows) != n
                or any(not isinstance(r, list) or len(r) != n for r in rows)):
            raise ValueError(f"{path}: generator {pos} is not {n}x{n}")
        try:
            gens.append(Matrix(order, [[parse_scalar(str(e), order) for e in r]
                                       for r in rows]))
        except ValueError as exc:
            raise ValueError(f"{path}: generator {pos}: {exc}") from exc
    names = data.get("names")
    if names is not None:
        if (not isinstance(names, list) or len(names) != len(gens)
                or any(not isinstance(s, str) or not s or "*" in s for s in names)
                or len(set(names)) != len(names)):
            raise ValueError(f"{path}: names must be distinct nonempty "
                             "strings without '*', one per generator")
    bound = data.get("bound", 1024)
    if not isinstance(bound, int) or bound < 1:
        raise ValueError(f"{path}: bound must be a positive integer")
    group = enumerate_group(gens, bound)
    return group, names


def _name_maps(names):
    if not names:
        return {}, {}
    to_internal = {name: "g%d" % (i + 1) for i, name in enumerate(names)}
    to_display = {w: name for name, w in to_internal.items()}
    return to_internal, to_display


def _word_display(word, to_display):
    return "*".join(to_display.get(tok, tok) for tok in word.split("*"))


def load_class_file(path, group, to_internal=None):
    """Parse a class file against an already-loaded group."""
    to_internal = to_internal or {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: class file must be a JSON object")
    for key in ("homologicalDegree", "terms"):
        if key not in data:
            raise ValueError(f"{path}: missing field {key!r}")
    p = data["homologicalDegree"]
    if not isinstance(p, int) or p < 0:
        raise ValueError(f"{path}: homologicalDegree must be a nonnegative integer")
    n, order = group.dim, group.scalar_order
    comps = {}
    for pos, term in enumerate(data["terms"], 1):
        where = f"{path}: term {pos}"
        if not isinstance(term, dict):
            raise ValueError(f"{where}: must be an object")
        for key in ("group", "coeff", "exponents", "wedge"):
            if key not in term:
                raise ValueError(f"{where}: missing field {key!r}")
        gref = term["group"]
        if isinstance(gref, str):
            gref = "*".join(to_internal.get(tok, tok) for tok in gref.split("*"))
        try:
            g = resolve_word(group, gref)
        except ValueError as exc:
            raise ValueError(f"{where}: {exc}") from exc
        try:
            coeff = parse_scalar(str(term["coeff"]), order)
        except ValueError as exc:
            raise ValueError(f"{where}: coeff: {exc}") from exc
        exps = term["exponents"]
        if (not isinstance(exps, list) or len(exps) != n
                or any(not isinstance(e, int) or e < 0 for e in exps)):
            raise ValueError(f"{where}: exponents must be {n} nonnegative integers")
        wedge = term["wedge"]
        if (not isinstance(wedge, list) or len(wedge) != p
                or any(not isinstance(i, int) for i in wedge)
                or any(not 1 <= i <= n for i in wedge)
                or any(a >= b for a, b in zip(wedge, wedge[1:]))):
            raise ValueError(f"{where}: wedge must be a strictly increasing "
                             f"list of {p} indices in 1..{n}")
        pv = Polyvector.term(coeff, tuple(exps),
                             tuple(i - 1 for i in wedge), order)
        comps[g] = comps[g] + pv if g in comps else pv
    return Cochain(group, p, comps)


def cochain_to_classfile(c, to_display=None):
    """Serialize a cochain to the class-file dictionary form."""
    to_display = to_display or {}
    terms = []
    for g in sorted(c.comps):
        word = _word_display(c.group.elements[g].word, to_display)
        pv = c.comps[g]
        for idx in sorted(pv.comps, key=lambda i: (len(i), i)):
            poly = pv.comps[idx]
            for exps in sorted(poly.terms):
                terms.append({
                    "group": word,
                    "coeff": print_scalar(poly.terms[exps]),
                    "exponents": list(exps),
                    "wedge": [i + 1 for i in idx],
                })
    return {"homologicalDegree": c.degree, "terms": terms}


# ---------------------------------------------------------------- reports


def _matrix_strings(m):
    return [[print_scalar(e) for e in row] for row in m.rows]


def _emit(report, lines, as_json):
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        for line in lines:
            print(line)


def cmd_group(args):
    group, names = load_group_file(args.file)
    _, to_display = _name_maps(names)
    elements = []
    for i in range(len(group)):
        geom = geometry(group, i)
        elements.append({
            "index": i,
            "word": _word_display(group.elements[i].word, to_display),
            "matrix": _matrix_strings(group.matrix(i)),
            "codim": geom.codim,
            "omega": str(geom.omega),
        })
    report = {
        "order": len(group),
        "dimension": group.dim,
        "cyclotomicOrder": group.scalar_order,
        "elements": elements,
        "conjugacyClasses": [[elements[i]["word"] for i in cls]
                             for cls in group.conj_classes],
        "kernel": [elements[i]["word"] for i in group.kernel_indices],
    }
    lines = [
        f"order: {report['order']}",
        f"dimension: {report['dimension']}",
        f"cyclotomic order: {report['cyclotomicOrder']}",
        "conjugacy classes: " + "  ".join(
            "{" + ", ".join(cls) + "}" for cls in report["conjugacyClasses"]),
        "kernel: " + ", ".join(report["kernel"]),
        "elements:",
    ]
    for el in elements:
        lines.append(f"  [{el['index']}] {el['word']}  codim {el['codim']}"
                     f"  omega {el['omega']}")
        for row in el["matrix"]:
            lines.append("      [ " + "  ".join(row) + " ]")
    _emit(report, lines, args.json)
    return 0


def cmd_cohomology(args):
    group, names = load_group_file(args.file)
    _, to_display = _name_maps(names)
    basis = cohomology_basis(group, args.p, args.m)
    direct = cohomology_dim_direct(group, args.p, args.m)
    classes = [cochain_to_classfile(c, to_display) for c in basis]
    report = {
        "p": args.p,
        "m": args.m,
        "count": len(basis),
        "crossCheck": direct,
        "match": len(basis) == direct,
        "classes": classes,
    }
    lines = [f"cohomology in exterior degree {args.p}, polynomial degree "
             f"{args.m}: {len(basis)} classes (cross-check {direct})"]
    for c, data in zip(basis, classes):
        lines.append(f"  {c}")
        lines.append("    " + json.dumps(data))
    _emit(report, lines, args.json)
    if len(basis) != direct:
        print(f"internal error: basis count {len(basis)} does not match "
              f"the direct dimension {direct}", file=sys.stderr)
        return 1
    return 0


def _support_codim(c):
    return max((geometry(c.group, g).codim for g in c.comps), default=0)


def cmd_bracket(args):
    group, names = load_group_file(args.file)
    to_internal, to_display = _name_maps(names)
    x = load_class_file(args.x, group, to_internal)
    y = load_class_file(args.y, group, to_internal)
    if args.reynolds:
        x, y = reynolds(x), reynolds(y)
    if args.project:
        x, y = project(x), project(y)
    report_obj = gerstenhaber(x, y)
    i, j = _support_codim(x), _support_codim(y)
    result = report_obj.result
    word = lambda g: _word_display(group.elements[g].word, to_display)
    report = {
        "result": cochain_to_classfile(result, to_display),
        "display": str(result),
        "grading": {"left": i, "right": j, "output": i + j},
        "terms": [{"left": word(g), "right": word(h), "value": str(pv)}
                  for (g, h), pv in sorted(report_obj.per_component_terms.items())],
        "vanishing": [{"left": word(g), "right": word(h), "reason": reason}
                      for g, h, reason in report_obj.vanishing_diagnostics],
    }
    lines = [
        f"bracket: {result}",
        f"grading: D({i}) x D({j}) -> D({i + j})",
    ]
    for t in report["terms"]:
        lines.append(f"  term at ({t['left']}, {t['right']}): {t['value']}")
    for v in report["vanishing"]:
        lines.append(f"  vanished at ({v['left']}, {v['right']}): {v['reason']}")
    lines.append("class file: " + json.dumps(report["result"]))
    _emit(report, lines, args.json)
    return 0


# ----------------------------------------------------------------- verify


def _thread_count():
    try:
        return max(1, int(os.environ.get("SKEWBRACK_THREADS", "1")))
    except ValueError:
        return 1


def _verify_appendix(args):
    bound = args.max
    threads = _thread_count()
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = pool.map(
                lambda name: appendix_suite(bound, bound, bound, only={name}),
                IDENTITY_NAMES)
        entries = [e for chunk in chunks for e in chunk]
    else:
        entries = appendix_suite(bound, bound, bound)
    failures = [e for e in entries if not e["pass"]]
    names_seen = sorted({e["identity"] for e in entries})
    report = {
        "suite": "appendix",
        "identities": len(names_seen),
        "checked": len(entries),
        "failures": [{"identity": e["identity"], "tuple": list(e["tuple"])}
                     for e in failures],
    }
    lines = [f"appendix: {len(names_seen) - len({f['identity'] for f in report['failures']})}"
             f"/{len(names_seen)} identities pass ({len(entries)} tuples, "
             f"bound {bound})"]
    for f in report["failures"]:
        lines.append(f"  FAIL {f['identity']} at {tuple(f['tuple'])}")
    return not failures, report, lines


def _verify_homotopy(args):
    checked, failures = homotopy_sweep(args.dim, args.s, args.z, args.t)
    report = {
        "suite": "homotopy",
        "checked": checked,
        "failures": [[list(s), list(z), list(e)] for s, z, e in failures],
    }
    lines = [f"homotopy: residual zero on {checked - len(failures)}/{checked} "
             f"basis inputs (dim {args.dim}, s <= {args.s}, z <= {args.z}, "
             f"t <= {args.t})"]
    for s, z, e in failures:
        lines.append(f"  FAIL at S={s} Z={z} middle={e}")
    return not failures, report, lines


def _verify_schouten(args):
    checked_r, fail_r = schouten_random_check(args.pairs, args.seed)
    checked_l, fail_l = schouten_graded_laws(args.dim)
    ok = not fail_r and not fail_l
    report = {
        "suite": "schouten",
        "randomPairs": checked_r,
        "randomFailures": fail_r,
        "lawChecks": checked_l,
        "lawFailures": [list(f) for f in fail_l],
    }
    lines = [
        f"schouten: chain bracket matches the derivation commutator on "
        f"{checked_r - len(fail_r)}/{checked_r} random vector-field pairs",
        f"schouten: antisymmetry and jacobi hold on "
        f"{checked_l - len(fail_l)}/{checked_l} basis tuples (dim {args.dim})",
    ]
    return ok, report, lines


def _verify_examples(args):
    from .fixtures import (
        klein_bracket_pair,
        overlap_bracket_pair,
        rotation_bracket_pair,
    )
    results = []

    group, x, y, expected = klein_bracket_pair()
    chain = chain_bracket_cochain(x, y)
    results.append(("sign pair on k^3: chain bracket", chain == expected))
    results.append(("sign pair on k^3: classes average to zero",
                    reynolds(x).is_zero() and reynolds(y).is_zero()))
    zero_bracket = gerstenhaber(reynolds(x), reynolds(y)).result
    results.append(("sign pair on k^3: averaged bracket is zero",
                    zero_bracket.is_zero()))

    for orders in ((2, 2), (3, 2)):
        group, x, y, expected = rotation_bracket_pair(*orders)
        rep = gerstenhaber(x, y)
        tag = f"plane pair k^5 orders {orders[0]},{orders[1]}"
        results.append((f"{tag}: bracket is the product volume class",
                        rep.result == expected and not rep.result.is_zero()))
        s, t = resolve_word(group, "g1"), resolve_word(group, "g2")
        results.append((f"{tag}: perp criterion does not apply",
                        not perp_vanishing_applies(group, s, t)))

    group, x, y = overlap_bracket_pair()
    g, h = resolve_word(group, "g1"), resolve_word(group, "g2")
    results.append(("overlapping signs on k^3: perp criterion applies",
                    perp_vanishing_applies(group, g, h)))
    results.append(("overlapping signs on k^3: bracket vanishes",
                    gerstenhaber(x, y).result.is_zero()))

    ok = all(flag for _, flag in results)
    report = {
        "suite": "examples",
        "checks": [{"name": name, "pass": flag} for name, flag in results],
    }
    lines = [f"examples: {'pass' if flag else 'FAIL'}  {name}"
             for name, flag in results]
    return ok, report, lines


def cmd_verify(args):
    runner = {
        "appendix": _verify_appendix,
        "homotopy": _verify_homotopy,
        "schouten": _verify_schouten,
        "examples": _verify_examples,
    }[args.suite]
    ok, report, lines = runner(args)
    report["pass"] = ok
    lines.append("verify: all checks pass" if ok
                 else "verify: FAILURES detected")
    _emit(report, lines, args.json)
    return 0 if ok else 1


# ------------------------------------------------------------------ main


def build_parser():
    parser = argparse.ArgumentParser(
        prog="skewbrack",
        description="Exact brackets on group-decorated polyvector fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_group = sub.add_parser("group", help="report a group file")
    p_group.add_argument("file")
    p_group.add_argument("--json", action="store_true")
    p_group.set_defaults(func=cmd_group)

    p_coh = sub.add_parser("cohomology", help="basis of a bidegree piece")
    p_coh.add_argument("file")
    p_coh.add_argument("--p", type=int, required=True,
                       help="exterior (homological) degree")
    p_coh.add_argument("--m", type=int, required=True,
                       help="polynomial degree")
    p_coh.add_argument("--json", action="store_true")
    p_coh.set_defaults(func=cmd_cohomology)

    p_br = sub.add_parser("bracket", help="bracket of two class files")
    p_br.add_argument("file", help="group file")
    p_br.add_argument("x", help="left class file")
    p_br.add_argument("y", help="right class file")
    p_br.add_argument("--reynolds", action="store_true",
                      help="average the inputs over the group first")
    p_br.add_argument("--project", action="store_true",
                      help="project the inputs to reduced form first")
    p_br.add_argument("--json", action="store_true")
    p_br.set_defaults(func=cmd_bracket)

    p_ver = sub.add_parser("verify", help="run a verification sweep")
    p_ver.add_argument("suite",
                       choices=["appendix", "homotopy", "schouten", "examples"])
    p_ver.add_argument("--max", type=int, default=6,
                       help="appendix: bound for s, t, z")
    p_ver.add_argument("--dim", type=int, default=3,
                       help="homotopy/schouten: dimension")
    p_ver.add_argument("--s", type=int, default=2,
                       help="homotopy: bound for the left block")
    p_ver.add_argument("--z", type=int, default=2,
                       help="homotopy: bound for the right block")
    p_ver.add_argument("--t", type=int, default=3,
                       help="homotopy: bound for the middle degree")
    p_ver.add_argument("--pairs", type=int, default=50,
                       help="schouten: number of random pairs")
    p_ver.add_argument("--seed", type=int, default=0,
                       help="schouten: random seed")
    p_ver.add_argument("--json", action="store_true")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
