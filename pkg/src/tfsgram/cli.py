"""Command-line front end.

Exit status: 0 accept or success, 1 reject (or a failed check), 2 usage or
input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .avm import parse_avm, tokenize
from .chart import ParseConfig, Verdict, format_trace_json, format_trace_line, parse
from .errors import CyclicStructure, Inconsistent, TFSError, UnificationFailure
from .fs import _bfs_paths, cyclic_chain, is_cyclic, morphism, paths, rank_components, spec_chain, strictly_subsumes, unify
from .grammar import bundled_path, load_grammar, load_hierarchy
from .hierarchy import BOT, validate
from .mrs import project

EXIT_OK, EXIT_REJECT, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists() and p.parent == Path("."):
        # fall back to the grammars shipped with the package
        try:
            bundled = bundled_path(p.name)
        except (FileNotFoundError, ModuleNotFoundError):
            bundled = None
        if bundled is not None and bundled.exists():
            p = bundled
    try:
        return p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror or exc)) from None


def _grammar(path):
    return load_grammar(_read(path))


def _hierarchy(path, texts):
    if path is None:
        # every type mentioned becomes a direct subtype of bot
        names = {t.value for text in texts for t in tokenize(text) if t.kind == "name"}
        return validate({n: [BOT] for n in names if n != BOT})
    text = _read(path)
    try:
        return load_hierarchy(text)
    except TFSError:
        return load_grammar(text).hierarchy


def _structure(text, h):
    return parse_avm(text, h)


def _fmt_path(p) -> str:
    return ".".join(p) if p else "ε"


# ---------------------------------------------------------------------------
# commands


def cmd_check(args, out) -> int:
    g = _grammar(args.grammar)
    proper = len(g.hierarchy.types) - 1
    name = g.name or Path(args.grammar).stem
    print(
        "%s: ok, %d rules, %d words, %d types"
        % (name, len(g.rules), len(g.lexicon), proper),
        file=out,
    )
    if g.has_empty_rules:
        print("note: grammar has empty-bodied rules", file=out)
    return EXIT_OK


def cmd_parse(args, out) -> int:
    g = _grammar(args.grammar)
    words = args.sentence.split()
    cfg = ParseConfig(
        occurs_check=not args.no_occurs_check,
        subsumption_filter=not args.no_filter,
        max_items=args.max_items,
        restriction_depth=args.restrict,
        trace=args.trace,
        acceptance=args.acceptance,
    )
    res = parse(g, words, cfg)
    goals = [project(y.sigma, 1).canonical() for y in res.goals]
    if args.json:
        for rec in res.trace:
            print(format_trace_json(rec), file=out)
        summary = {
            "verdict": res.verdict.value,
            "words": words,
            "goals": goals,
            "counters": res.counters.as_dict(),
        }
        print(json.dumps(summary, ensure_ascii=False, sort_keys=True), file=out)
    else:
        for rec in res.trace:
            print(format_trace_line(rec), file=out)
        print("verdict: %s" % res.verdict.value, file=out)
        for gl in goals:
            print("goal: %s" % gl, file=out)
        c = res.counters.as_dict()
        print("counters: " + " ".join("%s=%d" % kv for kv in c.items()), file=out)
    return {Verdict.ACCEPT: EXIT_OK, Verdict.REJECT: EXIT_REJECT, Verdict.RESOURCE_LIMIT: EXIT_LIMIT}[res.verdict]


def cmd_fs(args, out) -> int:
    texts = [_read(f) for f in args.files]
    h = _hierarchy(args.hierarchy, texts)
    structs = [_structure(t, h) for t in texts]
    op = args.op
    need = 2 if op in ("subsume", "unify") else 1
    if len(structs) != need:
        raise InputError("fs %s takes %d structure file%s" % (op, need, "s" if need > 1 else ""))
    a = structs[0]
    if op == "subsume":
        m = morphism(a, structs[1])
        if not m:
            print("no: %s" % m, file=out)
            return EXIT_REJECT
        strict = strictly_subsumes(a, structs[1])
        print("yes%s" % (" (strict)" if strict else " (variants)"), file=out)
        _, where_a = _bfs_paths(a)
        _, where_b = _bfs_paths(structs[1])
        for q in sorted(m.mapping, key=lambda q: (len(where_a[q]), where_a[q])):
            print("  %s -> %s" % (_fmt_path(where_a[q]), _fmt_path(where_b[m[q]])), file=out)
        return EXIT_OK
    if op == "unify":
        try:
            u = unify(a, structs[1], occurs_check=not args.no_occurs_check)
        except Inconsistent as exc:
            print("INCONSISTENT: %s" % exc, file=out)
            return EXIT_REJECT
        except UnificationFailure as exc:
            print("FAILED: %s" % exc, file=out)
            return EXIT_REJECT
        print(u.canonical(), file=out)
        return EXIT_OK
    if op == "rank":
        c = rank_components(a)
        print("rank=%d (|Π|=%d Θ=%d Δ=%d)" % (c.rank, c.paths, c.theta, c.delta), file=out)
        return EXIT_OK
    if op == "cyclic":
        print("true" if is_cyclic(a) else "false", file=out)
        return EXIT_OK
    if op == "paths":
        for p in sorted(paths(a), key=lambda p: (len(p), p)):
            print(_fmt_path(p), file=out)
        return EXIT_OK
    raise InputError("unknown fs operation %r" % op)  # pragma: no cover


def cmd_demo(args, out) -> int:
    n = args.n
    if n < 1:
        raise InputError("n must be at least 1")
    cyclic = args.which == "cyclic-chain"
    if cyclic:
        make, name, rel = cyclic_chain, "A", "⊐"
        print("A_i: i+1 bot nodes on an f-chain, the last one looping to itself", file=out)
    else:
        make, name, rel = spec_chain, "B", "⊏"
        print("B_i: f-chain of i+1 nodes, the first i typed t, the last bot", file=out)
    col = "%s_i %s %s_{i+1}" % (name, rel, name)
    print("%4s  %5s  %6s  %4s  %s" % ("i", "nodes", "cyclic", "rank", "strict"), file=out)
    ok = 0
    prev_rank = None
    increasing = True
    cur = make(0)
    for i in range(n):
        nxt = make(i + 1)
        if cyclic:
            strict = strictly_subsumes(nxt, cur)
        else:
            strict = strictly_subsumes(cur, nxt)
        ok += strict
        if is_cyclic(cur):
            r = "n/a"
        else:
            rv = rank_components(cur).rank
            if prev_rank is not None and rv <= prev_rank:
                increasing = False
            prev_rank = rv
            r = str(rv)
        print(
            "%4d  %5d  %6s  %4s  %s: %s"
            % (i, len(cur.nodes), "yes" if is_cyclic(cur) else "no", r, col, "yes" if strict else "NO"),
            file=out,
        )
        cur = nxt
    print("verified %d/%d strict pairs" % (ok, n), file=out)
    if not cyclic:
        print("ranks strictly increasing: %s" % ("yes" if increasing else "NO"), file=out)
    return EXIT_OK if ok == n and increasing else EXIT_REJECT


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tfsgram", description="Typed feature structures and unification-grammar parsing.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a grammar file")
    p.add_argument("grammar")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("parse", help="parse a sentence")
    p.add_argument("grammar")
    p.add_argument("sentence", help="words separated by whitespace (quote the whole sentence)")
    p.add_argument("--no-filter", action="store_true", help="disable the subsumption filter")
    p.add_argument("--no-occurs-check", action="store_true", help="allow cyclic structures")
    p.add_argument("--max-items", type=_positive, default=100_000, metavar="N")
    p.add_argument("--restrict", type=_natural, default=None, metavar="D", help="truncate items at depth D")
    p.add_argument("--trace", action="store_true", help="print every retained item")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--acceptance", choices=("unify", "subsume"), default="unify")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("fs", help="feature-structure operations on AVM files")
    p.add_argument("op", choices=("subsume", "unify", "rank", "cyclic", "paths"))
    p.add_argument("files", nargs="+")
    p.add_argument("--hierarchy", metavar="FILE", help="type declarations (or a grammar file)")
    p.add_argument("--no-occurs-check", action="store_true")
    p.set_defaults(func=cmd_fs)

    p = sub.add_parser("demo", help="print one of the infinite-chain demonstrations")
    p.add_argument("which", choices=("cyclic-chain", "spec-chain"))
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_demo)
    return ap


def _natural(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, TFSError, CyclicStructure) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
