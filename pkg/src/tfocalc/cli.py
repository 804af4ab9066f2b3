"""Command-line front end.

Exit codes: 0 ok, 1 I/O error, 2 parse error, 3 check failure (also: not
stratifiable, cut elimination refused), 4 search exhausted or timed out.
Results go to stdout; diagnostics go to stderr. ``TFO_COLOR=0`` turns off ANSI colour.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .calculi import CATALOG, check_proof, get_system, rule_table
from .cutelim import CutElimError, eliminate_cuts, trace
from .export import FORMATS, ExportError, export, json_to_script
from .proof import (
    ScriptParseError, StructureError, count_rule, format_script, height, parse_script,
    parse_sequent, script_to_tree, tree_to_script,
)
from .search import SearchBudget, prove_bounded
from .stratify import stratify
from .syntax import ParseError, parse_formula

EXIT_OK, EXIT_IO, EXIT_PARSE, EXIT_CHECK, EXIT_SEARCH = 0, 1, 2, 3, 4


def _color(text: str, code: str, stream=sys.stderr) -> str:
    if os.environ.get("TFO_COLOR", "1") == "0" or not stream.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _err(msg: str):
    print(msg, file=sys.stderr)


class _Fail(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _Fail(EXIT_IO, f"{path}: {e.strerror or e}") from None


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise _Fail(EXIT_IO, f"{path}: {e.strerror or e}") from None


def _load(path: str):
    text = _read(path)
    try:
        script = parse_script(text)
        return script, script_to_tree(script)
    except ScriptParseError as e:
        where = f":{e.lineno}" if getattr(e, "lineno", None) else ""
        raise _Fail(EXIT_PARSE, f"{path}{where}: {e}") from None
    except StructureError as e:
        raise _Fail(EXIT_PARSE, f"{path}: {e}") from None


def _system(spec: str):
    try:
        return get_system(spec)
    except KeyError as e:
        raise _Fail(EXIT_PARSE, str(e.args[0])) from None


# --- commands ----------------------------------------------------------------

def cmd_check(args) -> int:
    script, tree = _load(args.file)
    sysdef = _system(args.system or script.system)
    errors = check_proof(sysdef, tree, script.assumptions)
    if errors:
        for e in errors:
            _err(f"{args.file}: {_color('error', '31')}: {e}")
        print(f"fail\t{script.name}\t{sysdef.id}\t{len(errors)} error(s)")
        return EXIT_CHECK
    print(f"ok\t{script.name}\t{sysdef.id}\theight={height(tree)}\tcuts={count_rule(tree, 'Cut')}")
    return EXIT_OK


def cmd_search(args) -> int:
    sysdef = _system(args.system)
    try:
        goal = parse_sequent(args.sequent)
    except (ParseError, ValueError) as e:
        raise _Fail(EXIT_PARSE, f"sequent: {e}") from None
    budget = SearchBudget(max_depth=args.depth, max_branch=args.branch, time_limit=args.time)
    result = prove_bounded(sysdef, goal, budget)
    if result.status == "found":
        _err(f"{_color('found', '32')} after {result.nodes} nodes")
        sys.stdout.write(format_script(tree_to_script(result.proof, sysdef.id, "search")))
        return EXIT_OK
    print(f"{result.status}\tnodes={result.nodes}\tdepth<={args.depth}")
    return EXIT_SEARCH


def cmd_stratify(args) -> int:
    try:
        phi = parse_formula(args.formula)
    except (ParseError, ValueError) as e:
        raise _Fail(EXIT_PARSE, f"formula: {e}") from None
    result = stratify(phi)
    print(result)
    for w in result.warnings:
        _err(f"warning: {w}")
    return EXIT_OK if result.ok else EXIT_CHECK


def cmd_cutelim(args) -> int:
    script, tree = _load(args.file)
    try:
        if args.trace:
            steps = trace(script.system, tree, script.assumptions)
            for k, step in enumerate(steps):
                for i, s in enumerate(step.substeps or [step]):
                    _err(f"cut {k}\tstep {i}\tparent={s.parent}\tdepth={s.depth}\t{s.kind}\t"
                         f"measure={s.measure}")
        out = eliminate_cuts(script.system, tree, script.assumptions)
    except CutElimError as e:
        raise _Fail(EXIT_CHECK, f"{args.file}: {e}") from None
    name = script.name + "_cutfree"
    _write(args.output, format_script(tree_to_script(out, script.system, name, script.assumptions)))
    _err(f"cuts {count_rule(tree, 'Cut')} -> {count_rule(out, 'Cut')}, "
         f"height {height(tree)} -> {height(out)}")
    return EXIT_OK


def cmd_export(args) -> int:
    script, tree = _load(args.file)
    try:
        text = export(tree, args.format, script.system, script.name, script.assumptions)
    except ExportError as e:
        raise _Fail(EXIT_PARSE, str(e)) from None
    _write(args.output, text)
    return EXIT_OK


def cmd_import(args) -> int:
    try:
        script = json_to_script(_read(args.file))
    except ExportError as e:
        raise _Fail(EXIT_PARSE, str(e)) from None
    _write(args.output, format_script(script))
    return EXIT_OK


def cmd_corpus(args) -> int:
    from .corpus import run_corpus
    report = run_corpus()
    print(report)
    return EXIT_OK if report.ok else EXIT_CHECK


def cmd_catalog(args) -> int:
    if args.system:
        sysdef = _system(args.system)
        print(f"{sysdef.id}: {sysdef.description} (pure={sysdef.pure}, R={sysdef.relation_R})")
        print(rule_table(sysdef))
        return EXIT_OK
    for c in CATALOG.values():
        flag = " [experimental]" if c.experimental else ""
        print(f"{c.id}\t{len(c.rules)} rules\t{c.description}{flag}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tfocalc", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check a proof script")
    c.add_argument("file")
    c.add_argument("--system", help="override the script's calculus")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("search", help="bounded backward proof search")
    s.add_argument("sequent")
    s.add_argument("--system", required=True)
    s.add_argument("--depth", type=int, default=8)
    s.add_argument("--branch", type=int, default=2, help="contraction copies per formula")
    s.add_argument("--time", type=float, default=10.0, help="seconds")
    s.set_defaults(func=cmd_search)

    st = sub.add_parser("stratify", help="NF stratification of a formula")
    st.add_argument("formula")
    st.set_defaults(func=cmd_stratify)

    ce = sub.add_parser("cutelim", help="eliminate all cuts")
    ce.add_argument("file")
    ce.add_argument("-o", "--output")
    ce.add_argument("--trace", action="store_true", help="reduction steps on stderr")
    ce.set_defaults(func=cmd_cutelim)

    ex = sub.add_parser("export", help="serialize a proof script")
    ex.add_argument("file")
    ex.add_argument("--format", choices=FORMATS, default="json")
    ex.add_argument("-o", "--output")
    ex.set_defaults(func=cmd_export)

    im = sub.add_parser("import", help="JSON proof document back to a script")
    im.add_argument("file", nargs="?", default="-")
    im.add_argument("-o", "--output")
    im.set_defaults(func=cmd_import)

    co = sub.add_parser("corpus", help="run the bundled fixtures")
    co.set_defaults(func=cmd_corpus)

    ca = sub.add_parser("catalog", help="list calculi or one calculus' rules")
    ca.add_argument("system", nargs="?")
    ca.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as f:
        _err(f"{_color('error', '31')}: {f}")
        return f.code


if __name__ == "__main__":
    sys.exit(main())
