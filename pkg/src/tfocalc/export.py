"""Serializers: LaTeX (bussproofs), versioned JSON and Graphviz dot."""
from __future__ import annotations

import dataclasses
import json

from . import syntax as S
from .proof import Assumption, ProofScript, ProofTree, Sequent, print_sequent, tree_to_script
from .syntax import (
    BoundVar, Param, Tfo, Pred, Eq, In, Ex, Not, And, Or, Imp, Iff, Forall, Exists,
)

FORMATS = ("latex-bussproofs", "json", "dot")
SCHEMA = "tfocalc.proof"
VERSION = 1


class ExportError(ValueError):
    pass


# --- JSON ------------------------------------------------------------------

_NODE_TYPES = {c.__name__: c for c in
               (BoundVar, Param, Tfo, Pred, Eq, In, Ex, Not, And, Or, Imp, Iff, Forall, Exists)}


def _enc(x):
    if isinstance(x, tuple):
        return [_enc(y) for y in x]
    if dataclasses.is_dataclass(x):
        d = {"type": type(x).__name__}
        for f in dataclasses.fields(x):
            d[f.name] = _enc(getattr(x, f.name))
        return d
    return x


def _dec(x):
    if isinstance(x, list):
        return tuple(_dec(y) for y in x)
    if isinstance(x, dict):
        cls = _NODE_TYPES.get(x.get("type"))
        if cls is None:
            raise ExportError(f"unknown syntax node {x.get('type')!r}")
        return cls(**{k: _dec(v) for k, v in x.items() if k != "type"})
    return x


def _enc_seq(s: Sequent):
    return {"text": print_sequent(s), "ante": _enc(s.ante), "succ": _enc(s.succ)}


def _dec_seq(d) -> Sequent:
    return Sequent(_dec(d["ante"]), _dec(d["succ"]))


def to_json(p: ProofTree, system: str, name: str = "proof", assumptions=()) -> str:
    """Node table in post-order; shared subtrees appear once. ``text`` fields
    are informational and ignored on import."""
    script = tree_to_script(p, system, name, assumptions)
    table = []
    # tree_to_script drops source line numbers; recover them in the same order
    order = []
    seen = set()

    def walk(n):
        if id(n) in seen:
            return
        seen.add(id(n))
        for c in n.children:
            walk(c)
        order.append(n)

    old = _raise_limit()
    try:
        walk(p)
    finally:
        _restore_limit(old)
    for ln, node in zip(script.lines, order):
        table.append({"id": ln.number, "sequent": _enc_seq(ln.sequent), "rule": ln.rule,
                      "premises": list(ln.premises), "hints": [list(h) for h in ln.hints],
                      "line": node.line})
    doc = {
        "schema": SCHEMA, "version": VERSION, "system": system, "name": name,
        "assumptions": [{"kind": a.kind, "schematic": sorted(a.schematic),
                         "sequent": _enc_seq(a.sequent)} for a in assumptions],
        "nodes": table, "root": table[-1]["id"],
    }
    return json.dumps(doc, ensure_ascii=False, indent=1)


def from_json(text: str):
    """Inverse of :func:`to_json`: ``(tree, system, name, assumptions)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ExportError(f"not JSON: {e}") from None
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise ExportError("not a tfocalc proof document")
    if doc.get("version") != VERSION:
        raise ExportError(f"unsupported schema version {doc.get('version')!r}")
    try:
        built = {}
        for n in doc["nodes"]:
            kids = tuple(built[i] for i in n["premises"])
            built[n["id"]] = ProofTree(_dec_seq(n["sequent"]), n["rule"], kids,
                                       tuple(tuple(h) for h in n.get("hints", ())), n.get("line"))
        assumptions = [Assumption(_dec_seq(a["sequent"]), frozenset(a["schematic"]), a["kind"])
                       for a in doc.get("assumptions", ())]
        return built[doc["root"]], doc["system"], doc.get("name", "proof"), assumptions
    except (KeyError, TypeError) as e:
        raise ExportError(f"malformed proof document: {e!r}") from None


# --- LaTeX -----------------------------------------------------------------

_TFO_TEX = {"tau": r"\tau", "iota": r"\iota", "eps": r"\varepsilon", "count": r"\#",
            "lambda": r"\lambda"}
_BIN_TEX = {Iff: r"\leftrightarrow", Imp: r"\to", Or: r"\lor", And: r"\land"}


def _tex_name(n: str) -> str:
    n = n.replace("_", r"\_")
    return n if len(n) == 1 else r"\mathit{" + n + "}"


def tex_term(t) -> str:
    match t:
        case BoundVar(n) | Param(n):
            return _tex_name(n)
        case Tfo("set", v, b):
            return r"\{" + _tex_name(v) + r" \mid " + tex_formula(b) + r"\}"
        case Tfo(op, v, b):
            return _TFO_TEX.get(op, op) + " " + _tex_name(v) + "\\,(" + tex_formula(b) + ")"
    raise TypeError(t)


def tex_formula(phi) -> str:
    match phi:
        case Pred(n, ()):
            return _tex_name(n)
        case Pred(n, args):
            return _tex_name(n) + "(" + ", ".join(tex_term(a) for a in args) + ")"
        case Eq(l, r):
            return f"{tex_term(l)} = {tex_term(r)}"
        case In(l, r):
            return f"{tex_term(l)} \\in {tex_term(r)}"
        case Ex(t):
            return r"E!\," + tex_term(t)
        case Not(s):
            inner = tex_formula(s)
            return r"\neg " + (inner if S._prec(s) == 5 else f"({inner})")
        case Forall(v, b):
            return r"\forall " + _tex_name(v) + "\\,(" + tex_formula(b) + ")"
        case Exists(v, b):
            return r"\exists " + _tex_name(v) + "\\,(" + tex_formula(b) + ")"
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            p = S._prec(phi)
            lmin, rmin = (p + 1, p) if isinstance(phi, Imp) else (p, p + 1)
            ls, rs = tex_formula(l), tex_formula(r)
            if S._prec(l) < lmin:
                ls = f"({ls})"
            if S._prec(r) < rmin:
                rs = f"({rs})"
            return f"{ls} {_BIN_TEX[type(phi)]} {rs}"
    raise TypeError(phi)


def tex_sequent(s: Sequent) -> str:
    return (", ".join(tex_formula(f) for f in s.ante) + r" \Rightarrow "
            + ", ".join(tex_formula(f) for f in s.succ))


_RULE_TEX = {"forall": r"\forall", "exists": r"\exists", "tau": r"\tau", "not": r"\neg",
             "and": r"\land", "or": r"\lor", "imp": r"\to", "iff": r"\leftrightarrow",
             "eq": "=", "forallF": r"\forall^F", "existsF": r"\exists^F"}


def _tex_rule(rule: str) -> str:
    parts = rule.split("=>")
    out = r"{\Rightarrow}".join(_RULE_TEX.get(x, x.replace("_", r"\_")) for x in parts)
    if parts[-1] == "F" and len(parts) == 2:  # forall=>F, exists=>F
        out = _RULE_TEX.get(parts[0], parts[0]) + r"{\Rightarrow}^F"
    return "$(" + out + ")$"


_INF = {1: r"\UnaryInfC", 2: r"\BinaryInfC", 3: r"\TrinaryInfC",
        4: r"\QuaternaryInfC", 5: r"\QuinaryInfC"}


def to_latex(p: ProofTree, standalone: bool = True) -> str:
    lines = []

    def emit(n: ProofTree):
        for c in n.children:
            emit(c)
        seq = "$" + tex_sequent(n.conclusion) + "$"
        if not n.children:
            lines.append(r"\AxiomC{}")
            lines.append(r"\RightLabel{\scriptsize " + _tex_rule(n.rule) + "}")
            lines.append(r"\UnaryInfC{" + seq + "}")
        else:
            if len(n.children) not in _INF:
                raise ExportError(f"bussproofs cannot draw {len(n.children)} premises")
            lines.append(r"\RightLabel{\scriptsize " + _tex_rule(n.rule) + "}")
            lines.append(_INF[len(n.children)] + "{" + seq + "}")

    old = _raise_limit()
    try:
        emit(p)
    finally:
        _restore_limit(old)
    body = "\\begin{prooftree}\n" + "\n".join(lines) + "\n\\end{prooftree}\n"
    if not standalone:
        return body
    return ("\\documentclass{article}\n\\usepackage{amsmath,amssymb}\n\\usepackage{bussproofs}\n"
            "\\usepackage[landscape,margin=1cm]{geometry}\n\\begin{document}\n\\tiny\n"
            + body + "\\end{document}\n")


# --- dot -------------------------------------------------------------------

def to_dot(p: ProofTree, name: str = "proof") -> str:
    """Premises point to conclusions; shared subtrees are drawn once."""
    ids: dict = {}
    out = [f'digraph "{name}" {{', "  rankdir=BT;", '  node [shape=box, fontname="monospace"];']

    def visit(n):
        if id(n) in ids:
            return ids[id(n)]
        kids = [visit(c) for c in n.children]
        k = ids[id(n)] = f"n{len(ids)}"
        label = json.dumps(f"{print_sequent(n.conclusion)}\n({n.rule})")
        out.append(f"  {k} [label={label}];")
        for c in kids:
            out.append(f"  {c} -> {k};")
        return k

    old = _raise_limit()
    try:
        visit(p)
    finally:
        _restore_limit(old)
    out.append("}")
    return "\n".join(out) + "\n"


def export(p: ProofTree, fmt: str, system: str = "", name: str = "proof", assumptions=()) -> str:
    if fmt == "json":
        return to_json(p, system, name, assumptions)
    if fmt == "latex-bussproofs":
        return to_latex(p)
    if fmt == "dot":
        return to_dot(p, name)
    raise ExportError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def json_to_script(text: str) -> ProofScript:
    tree, system, name, assumptions = from_json(text)
    return tree_to_script(tree, system, name, assumptions)


def _raise_limit():
    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    return old


def _restore_limit(old):
    import sys
    sys.setrecursionlimit(old)
